"""
parameter grids shared by the grid-wide tests
"""

from itertools import product

from uc_radius.params import Kind, Norm, QBesselParams, WrightParams

NUS = (0.25, 0.5, 1.0, 1.5, 2.0)
QS = (0.3, 0.5, 0.8)
RHOS = (0.5, 1.0, 2.0)
BETAS = (0.5, 1.0, 1.5, 2.0)

QBESSEL_GRID = [
    QBesselParams(kind, nu, q)
    for kind, nu, q in product((Kind.JACKSON2, Kind.JACKSON3), NUS, QS)
]
WRIGHT_GRID = [WrightParams(rho, beta) for rho, beta in product(RHOS, BETAS)]

RADIUS_GRID = [
    (params, norm)
    for params in QBESSEL_GRID + WRIGHT_GRID
    for norm in (Norm.F, Norm.G, Norm.H)
    if norm is not Norm.F or isinstance(params, WrightParams) or params.nu > 0
]

INTERLACING_GRID = [
    QBesselParams(kind, nu, q)
    for kind, nu, q in product(
        (Kind.JACKSON2, Kind.JACKSON3), (0.5, 1.0, 2.0), QS
    )
]


def grid_id(point) -> str:
    params, norm = point if isinstance(point, tuple) else (point, None)
    values = "-".join(str(v) for v in params.descriptor().values())
    return values if norm is None else f"{values}-{norm.value}"
