"""Local normal zeta functions of class-2 nilpotent Lie rings."""

from ._nilzeta import (  # noqa: F401
    BadParams,
    BudgetExceeded,
    Error,
    NotFull,
    ParseError,
    Presentation,
    RatFun,
    UnsupportedFamily,
    assemble_zeta,
    bad_primes,
    block_even,
    block_odd,
    building_series,
    count_points,
    direct_sum,
    dusautoy_display,
    from_R,
    load,
    oracle_count,
    parse,
    prop32,
    prop34,
    run_cli,
    thm11,
    zeta_series,
)
