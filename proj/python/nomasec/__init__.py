"""Secrecy outage analysis for two-user downlink NOMA with antenna selection."""

from ._core import (
    AsymptoticSop,
    ConfigError,
    DomainError,
    EavesdropperMode,
    FadingProfile,
    IntegrationError,
    Link,
    McEstimate,
    NomasecError,
    ParseError,
    SeriesError,
    Solution,
    SopBreakdown,
    SopEstimates,
    SystemConfig,
    alpha_star,
    db_to_linear,
    gain_cdf,
    linear_to_db,
    load_scenario,
    parse_values,
    preset_names,
    preset_text,
    simulate,
    sop_asymptotic,
    sop_exact,
    sop_far_integral,
    sweep,
)

__version__ = "0.1.0"
