"""
Configuration validation utility.
Provides shared validation logic for manage.py, the CLI and
experiment configuration.
"""
import logging
import math

logger = logging.getLogger("smooth-validation")

MAX_POLYNOMIAL_DEGREE = 3
MIN_BENCH_REPEATS = 3


def validate_sample_count(val):
    """
    Validate SAMPLE_COUNT.
    Returns the count if valid, raises ValueError otherwise.
    """
    try:
        count = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid SAMPLE_COUNT: {val}. Must be an integer.")
    if count < 3:
        raise ValueError(f"SAMPLE_COUNT ({count}) must be at least 3.")
    return count


def validate_interval(low, high):
    """Validate an interval given as two bounds."""
    try:
        low, high = float(low), float(high)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid interval: <{low}, {high}>. Bounds must be numbers.")
    if not (math.isfinite(low) and math.isfinite(high)):
        raise ValueError(f"Invalid interval: <{low}, {high}>. Bounds must be finite.")
    if low >= high:
        raise ValueError(f"Invalid interval: <{low}, {high}>. Lower bound must be below upper bound.")
    return low, high


def validate_bound(val, name):
    """Validate a single finite interval bound."""
    try:
        bound = float(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid {name}: {val}. Must be a number.")
    if not math.isfinite(bound):
        raise ValueError(f"Invalid {name}: {val}. Must be finite.")
    return bound


def validate_noise_amplitude(val):
    """Validate NOISE_AMPLITUDE."""
    try:
        amplitude = float(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid NOISE_AMPLITUDE: {val}. Must be a number.")
    if not math.isfinite(amplitude) or amplitude < 0:
        raise ValueError(f"NOISE_AMPLITUDE ({val}) must be a finite number >= 0.")
    return amplitude


def validate_seed(val):
    """Validate SEED."""
    try:
        seed = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid SEED: {val}. Must be an integer.")
    if seed < 0:
        raise ValueError(f"SEED ({seed}) must be non-negative.")
    return seed


def validate_neighbors(val):
    """Validate NEIGHBORS (the K of the local methods)."""
    try:
        k = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid NEIGHBORS: {val}. Must be an integer.")
    if k < 1:
        raise ValueError(f"NEIGHBORS ({k}) must be at least 1.")
    return k


def validate_degree(val, name="LOWESS_DEGREE"):
    """Validate a polynomial degree."""
    try:
        degree = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid {name}: {val}. Must be an integer.")
    if degree < 0 or degree > MAX_POLYNOMIAL_DEGREE:
        raise ValueError(
            f"{name} ({degree}) must be between 0 and {MAX_POLYNOMIAL_DEGREE}."
        )
    return degree


def validate_centers(val):
    """Validate GLOBAL_CENTERS."""
    try:
        centers = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid GLOBAL_CENTERS: {val}. Must be an integer.")
    if centers < 1:
        raise ValueError(f"GLOBAL_CENTERS ({centers}) must be at least 1.")
    return centers


def validate_support_overlap(val):
    """Validate SUPPORT_OVERLAP."""
    try:
        overlap = float(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid SUPPORT_OVERLAP: {val}. Must be a number.")
    if not math.isfinite(overlap) or overlap <= 0:
        raise ValueError(f"SUPPORT_OVERLAP ({val}) must be a finite number > 0.")
    return overlap


def validate_repeats(val):
    """Validate BENCH_REPEATS."""
    try:
        repeats = int(val)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid BENCH_REPEATS: {val}. Must be an integer.")
    if repeats < MIN_BENCH_REPEATS:
        raise ValueError(
            f"BENCH_REPEATS ({repeats}) must be at least {MIN_BENCH_REPEATS}."
        )
    return repeats


def validate_log_level(val):
    """Validate LOG_LEVEL."""
    valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    if str(val).upper() not in valid_levels:
        raise ValueError(
            f"Invalid LOG_LEVEL: '{val}'. Must be one of: {', '.join(valid_levels)}"
        )
    return str(val).upper()


def validate_config_value(key, value):
    """
    Generic validation wrapper for a configuration key/value pair.
    """
    if key == "SAMPLE_COUNT":
        validate_sample_count(value)
    elif key in ("INTERVAL_LOW", "INTERVAL_HIGH"):
        validate_bound(value, key)
    elif key == "NOISE_AMPLITUDE":
        validate_noise_amplitude(value)
    elif key == "SEED":
        validate_seed(value)
    elif key == "NEIGHBORS":
        validate_neighbors(value)
    elif key in ("LOWESS_DEGREE", "GLOBAL_DEGREE"):
        validate_degree(value, key)
    elif key == "GLOBAL_CENTERS":
        validate_centers(value)
    elif key == "SUPPORT_OVERLAP":
        validate_support_overlap(value)
    elif key == "BENCH_REPEATS":
        validate_repeats(value)
    elif key == "LOG_LEVEL":
        validate_log_level(value)
    return value
