# Utility modules for the smoothing library and benchmark CLI.
