"""Exact Ramanujan sums, Wintner coefficients and smooth expansions."""

from ._core import (
    ArithFn,
    ScopeError,
    builtin,
    builtin_names,
    carmichael,
    csum,
    csum_definition,
    csum_holder,
    csum_kluyver,
    csum_nonvanishing,
    divisors,
    enumerate_smooth,
    from_table,
    irregular_series,
    kernel,
    load_table,
    local_expansion_flat,
    local_expansion_smooth,
    mobius,
    null_expansion,
    p_wintner,
    rvl_moduli,
    totient,
    wintner,
    wod,
)

__all__ = [
    "ArithFn",
    "ScopeError",
    "builtin",
    "builtin_names",
    "carmichael",
    "csum",
    "csum_definition",
    "csum_holder",
    "csum_kluyver",
    "csum_nonvanishing",
    "divisors",
    "enumerate_smooth",
    "from_table",
    "irregular_series",
    "kernel",
    "load_table",
    "local_expansion_flat",
    "local_expansion_smooth",
    "mobius",
    "null_expansion",
    "p_wintner",
    "rvl_moduli",
    "totient",
    "wintner",
    "wod",
]
