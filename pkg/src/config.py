import os
from dotenv import load_dotenv
import json
import logging
from src.utils.validation import (
    validate_bound,
    validate_centers,
    validate_degree,
    validate_interval,
    validate_log_level,
    validate_neighbors,
    validate_noise_amplitude,
    validate_repeats,
    validate_sample_count,
    validate_seed,
    validate_support_overlap,
)

logger = logging.getLogger(__name__)

# Load environment variables from .env file if present
load_dotenv()

DEFAULT_CONFIG_FILE = "config.json"


class Config:
    # Experiment and method defaults; environment, JSON file and CLI
    # flags override them in that order.

    # Synthetic data
    SAMPLE_COUNT = 2000
    INTERVAL_LOW = -1.0
    INTERVAL_HIGH = 1.0
    NOISE_AMPLITUDE = 0.1
    SEED = int(os.getenv('SMOOTH_SEED', '12345'))

    # Local methods
    NEIGHBORS = 100
    LOWESS_DEGREE = 1
    DEGREE_FALLBACK = True

    # Global RBF
    GLOBAL_CENTERS = 20
    GLOBAL_DEGREE = 1
    SUPPORT_OVERLAP = 2.0

    # Benchmarks
    BENCH_REPEATS = 3

    # Log Level Settings
    LOG_LEVEL = os.getenv('SMOOTH_LOG_LEVEL', 'INFO')

    KEY_TYPES = {
        'SAMPLE_COUNT': int,
        'INTERVAL_LOW': float,
        'INTERVAL_HIGH': float,
        'NOISE_AMPLITUDE': float,
        'SEED': int,
        'NEIGHBORS': int,
        'LOWESS_DEGREE': int,
        'DEGREE_FALLBACK': bool,
        'GLOBAL_CENTERS': int,
        'GLOBAL_DEGREE': int,
        'SUPPORT_OVERLAP': float,
        'BENCH_REPEATS': int,
        'LOG_LEVEL': str,
    }

    @staticmethod
    def config_file():
        # JSON file selected by SMOOTH_CONFIG, read at call time.
        return os.getenv('SMOOTH_CONFIG', DEFAULT_CONFIG_FILE)

    @staticmethod
    def reload_from_file(filepath):
        # Reload configuration from JSON file.
        try:
            with open(filepath, 'r') as f:
                config_dict = json.load(f)
            Config.load_from_dict(config_dict)
            return True
        except Exception as e:
            logger.error(f"Failed to reload config file {filepath}: {e}")
            return False

    @staticmethod
    def _convert_value(value, expected_type):
        # Convert value to expected type.
        if expected_type == bool and isinstance(value, str):
            return value.lower() in ('true', '1', 'yes')
        return expected_type(value)

    @staticmethod
    def load_from_dict(config_dict):
        # Update configuration from dictionary; unknown keys are ignored.
        if not config_dict:
            return

        for key, value in config_dict.items():
            expected_type = Config.KEY_TYPES.get(key)
            if expected_type is None or value is None:
                if expected_type is None:
                    logger.debug(f"Ignoring unknown configuration key {key}.")
                continue
            try:
                if isinstance(value, expected_type) and not (
                    expected_type is int and isinstance(value, bool)
                ):
                    setattr(Config, key, value)
                else:
                    setattr(Config, key, Config._convert_value(value, expected_type))
            except (ValueError, TypeError):
                msg = (
                    f"Configuration value {key}={value!r} could not be "
                    f"read as {expected_type.__name__}; keeping "
                    f"{getattr(Config, key)!r}."
                )
                logger.warning(msg)

    @staticmethod
    def as_dict():
        return {key: getattr(Config, key) for key in Config.KEY_TYPES}

    @staticmethod
    def validate():
        # Validate every setting, normalizing types in place.
        checks = [
            ('SAMPLE_COUNT', validate_sample_count),
            ('INTERVAL_LOW', lambda v: validate_bound(v, 'INTERVAL_LOW')),
            ('INTERVAL_HIGH', lambda v: validate_bound(v, 'INTERVAL_HIGH')),
            ('NOISE_AMPLITUDE', validate_noise_amplitude),
            ('SEED', validate_seed),
            ('NEIGHBORS', validate_neighbors),
            ('LOWESS_DEGREE', lambda v: validate_degree(v, 'LOWESS_DEGREE')),
            ('GLOBAL_CENTERS', validate_centers),
            ('GLOBAL_DEGREE', lambda v: validate_degree(v, 'GLOBAL_DEGREE')),
            ('SUPPORT_OVERLAP', validate_support_overlap),
            ('BENCH_REPEATS', validate_repeats),
            ('LOG_LEVEL', validate_log_level),
        ]
        for key, check in checks:
            setattr(Config, key, check(getattr(Config, key)))
        validate_interval(Config.INTERVAL_LOW, Config.INTERVAL_HIGH)
