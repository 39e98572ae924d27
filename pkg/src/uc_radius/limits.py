"""
Tables comparing q-Bessel and Wright functions with the classical Bessel
function in the limits where they reduce to it
"""

from typing import Iterable, Optional

import numpy as np
import pandas as pd

from .config import NumericsConfig
from .params import Kind, QBesselParams, WrightParams
from .qseries import classical_bessel, jackson_qbessel
from .wright import wright_phi

LIMIT_QS = (0.9, 0.95, 0.99)
LIMIT_XS = (0.5, 1.0, 1.5)
LIMIT_NUS = (0.0, 1.0)
IDENTITY_NUS = (0.0, 0.5, 1.0)


def classical_argument(kind: Kind, x: float) -> float:
    """
    Argument of J_nu that J^(s)((1 - q) x; q) tends to as q -> 1

    J^(2) tends to J_nu(x) and J^(3) to J_nu(2 x).
    """
    return x if Kind(kind) is Kind.JACKSON2 else 2 * x


def qbessel_limit_table(
    kind: Kind = Kind.JACKSON2,
    nus: Iterable[float] = LIMIT_NUS,
    xs: Iterable[float] = LIMIT_XS,
    qs: Iterable[float] = LIMIT_QS,
    config: Optional[NumericsConfig] = None,
) -> pd.DataFrame:
    """
    Relative error of J^(s)((1 - q) x; q) against its classical limit
    """
    rows = []
    for nu in nus:
        for q in qs:
            params = QBesselParams(kind, nu, q)
            for x in xs:
                scaled = jackson_qbessel(params, (1 - q) * x, 0, config).value
                limit = classical_bessel(
                    nu, classical_argument(kind, x), config
                ).value
                rows.append(
                    {
                        "kind": int(params.kind),
                        "nu": nu,
                        "q": q,
                        "x": x,
                        "qbessel": scaled,
                        "bessel": limit,
                        "rel_error": abs(scaled - limit) / abs(limit),
                    }
                )
    return pd.DataFrame(rows)


def wright_bessel_table(
    nus: Iterable[float] = IDENTITY_NUS,
    xs: Optional[Iterable[float]] = None,
    config: Optional[NumericsConfig] = None,
) -> pd.DataFrame:
    """
    Error of phi(1, nu + 1, -x^2 / 4) (x / 2)^nu against J_nu(x)
    """
    xs = np.linspace(0.1, 5.0, 50) if xs is None else np.asarray(list(xs))
    frames = []
    for nu in nus:
        phi = wright_phi(WrightParams(1.0, nu + 1), -(xs**2) / 4, 0, config)
        wright = phi.value * (xs / 2) ** nu
        bessel = classical_bessel(nu, xs, config).value
        frames.append(
            pd.DataFrame(
                {
                    "nu": nu,
                    "x": xs,
                    "wright": wright,
                    "bessel": bessel,
                    "abs_error": np.abs(wright - bessel),
                }
            )
        )
    return pd.concat(frames, ignore_index=True)
