# Synthetic data, experiment runs, benchmarks and result files.
from src.harness.experiment import (
    AT_SAMPLES,
    BenchmarkRow,
    ComparisonRow,
    ExperimentConfig,
    ExperimentReport,
    MethodSpec,
    QueryMode,
    default_methods,
    parse_method,
    parse_queries,
    reproduce_comparison_table,
    run_experiment,
    scaling_exponent,
    scaling_sweep,
    timing_benchmark,
)
from src.harness.output import (
    emit_results,
    read_curves_csv,
    read_dataset_csv,
    write_bench_csv,
    write_comparison_csv,
)
from src.harness.sampling import add_uniform_noise, sample_test_function, tau

__all__ = [
    "AT_SAMPLES",
    "BenchmarkRow",
    "ComparisonRow",
    "ExperimentConfig",
    "ExperimentReport",
    "MethodSpec",
    "QueryMode",
    "default_methods",
    "parse_method",
    "parse_queries",
    "reproduce_comparison_table",
    "run_experiment",
    "scaling_exponent",
    "scaling_sweep",
    "timing_benchmark",
    "emit_results",
    "read_curves_csv",
    "read_dataset_csv",
    "write_bench_csv",
    "write_comparison_csv",
    "add_uniform_noise",
    "sample_test_function",
    "tau",
]
