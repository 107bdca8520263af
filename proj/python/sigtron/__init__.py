"""SIGTRON sigmoid family, induced losses, and SIC model training."""

try:
    from ._sigtron import (  # noqa: F401
        ConfigError,
        Hyperplane,
        ParseError,
        SigtronParams,
        alpha_grid,
        f_integral,
        imbalance_ratios,
        inflection_point,
        lambda_grid,
        logistic_loss,
        predict,
        sigtron,
        sigtron_grad,
        sigtron_loss,
        sigtron_loss_grad,
        train_logistic,
        train_sic,
    )
except ImportError:  # extension on sys.path directly (in-tree builds)
    from _sigtron import (  # noqa: F401
        ConfigError,
        Hyperplane,
        ParseError,
        SigtronParams,
        alpha_grid,
        f_integral,
        imbalance_ratios,
        inflection_point,
        lambda_grid,
        logistic_loss,
        predict,
        sigtron,
        sigtron_grad,
        sigtron_loss,
        sigtron_loss_grad,
        train_logistic,
        train_sic,
    )

__all__ = [
    "ConfigError",
    "Hyperplane",
    "ParseError",
    "SigtronParams",
    "alpha_grid",
    "f_integral",
    "imbalance_ratios",
    "inflection_point",
    "lambda_grid",
    "logistic_loss",
    "predict",
    "sigtron",
    "sigtron_grad",
    "sigtron_loss",
    "sigtron_loss_grad",
    "train_logistic",
    "train_sic",
]
