"""
Command-line interface for uc_radius

Usage:
    uc-radius radius --family qbessel --kind 2 --norm g --nu 1 --q 0.5
    uc-radius verify --family wright --norm h --rho 1 --beta 1 --tol 1e-6
    uc-radius zeros --family qbessel --which derivative --nu 1 --q 0.5
    uc-radius sweep --family qbessel --nu 0.5,1 --q 0.3,0.5 -o grid.csv
    uc-radius limit-check
    uc-radius --job job.json
"""

import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from itertools import product
from typing import List, Optional

import click
import pandas as pd

from .config import NumericsConfig, resolve_config
from .exceptions import DomainError, NumericalError
from .limits import qbessel_limit_table, wright_bessel_table
from .oracle import oracle_radius, uc_margin
from .params import (
    BesselParams,
    Kind,
    Norm,
    QBesselParams,
    WrightParams,
)
from .qseries import classical_bessel, jackson_qbessel, normalized_qbessel
from .radius import UCTarget, dual_route
from .wright import normalized_wright, wright_phi
from .zeros import ZeroCache, ZeroKind, ZeroTarget

logger = logging.getLogger(__name__)

SCHEMA = "uc-radius/1"
COMMANDS = ("eval", "zeros", "radius", "verify", "sweep", "limit-check")
FORMATS = ("json", "csv", "text")
FAMILIES = ("qbessel", "wright", "bessel")
SWEEP_COLUMNS = [
    "family",
    "kind",
    "norm",
    "nu|rho",
    "q|beta",
    "radius",
    "residual",
    "method_agreement",
    "domain_upper",
]
DEFAULT_VERIFY_TOL = 1e-6


@dataclass
class JobSpec:  # pylint: disable=too-many-instance-attributes
    """
    Everything one CLI invocation needs; a JSON job file holds these keys
    """

    command: str
    family: str = "qbessel"
    kind: List[int] = field(default_factory=lambda: [2])
    "Jackson kinds; sweeps take several"
    norm: Optional[str] = None
    "normalization; eval without it evaluates the bare function"
    nu: List[float] = field(default_factory=list)
    q: List[float] = field(default_factory=list)
    rho: List[float] = field(default_factory=list)
    beta: List[float] = field(default_factory=list)
    z: Optional[float] = None
    deriv: int = 0
    which: str = "function"
    count: int = 5
    output: str = "json"
    out: Optional[str] = None
    "file to write instead of stdout"
    cache_dir: Optional[str] = None
    tol: Optional[float] = None
    workers: int = 4

    def __post_init__(self):
        for name in ("nu", "q", "rho", "beta"):
            value = getattr(self, name)
            if value is None:
                value = []
            elif not isinstance(value, (list, tuple)):
                value = [value]
            setattr(self, name, [float(v) for v in value])
        kinds = self.kind
        if not isinstance(kinds, (list, tuple)):
            kinds = [kinds]
        self.kind = [Kind(int(k)).value for k in kinds]
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.output not in FORMATS:
            raise DomainError(f"unknown output format {self.output!r}")
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")

    @classmethod
    def from_file(cls, path: str) -> "JobSpec":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown job keys {sorted(unknown)}")
        return cls(**data)

    def config(self) -> NumericsConfig:
        return NumericsConfig(cache_dir=self.cache_dir)


def _single(values: list, name: str):
    if len(values) != 1:
        raise DomainError(f"exactly one value of {name} is required")
    return values[0]


def _params(spec: JobSpec):
    """
    Parameters of the single family member a non sweep command works on
    """
    if spec.family == "qbessel":
        return QBesselParams(
            Kind(_single(spec.kind, "kind")),
            _single(spec.nu, "nu"),
            _single(spec.q, "q"),
        )
    if spec.family == "wright":
        return WrightParams(
            _single(spec.rho, "rho"), _single(spec.beta, "beta")
        )
    return BesselParams(_single(spec.nu, "nu"))


def _target(spec: JobSpec) -> UCTarget:
    if spec.norm is None:
        raise DomainError(f"{spec.command} needs --norm")
    if spec.family == "bessel":
        raise DomainError("radii are computed for qbessel and wright only")
    return UCTarget(_params(spec), Norm(spec.norm))


def _document(spec: JobSpec, inputs: dict, result) -> dict:
    return {
        "schema": SCHEMA,
        "command": spec.command,
        "input": inputs,
        "result": result,
    }


def _eval(spec: JobSpec) -> dict:
    if spec.z is None:
        raise DomainError("eval needs --z")
    params = _params(spec)
    config = spec.config()
    if spec.norm is not None:
        if isinstance(params, QBesselParams):
            result = normalized_qbessel(
                params, Norm(spec.norm), spec.z, spec.deriv, config
            )
        elif isinstance(params, WrightParams):
            result = normalized_wright(
                params, Norm(spec.norm), spec.z, spec.deriv, config
            )
        else:
            raise DomainError("the classical Bessel function has no norm")
    elif isinstance(params, QBesselParams):
        result = jackson_qbessel(params, spec.z, spec.deriv, config)
    elif isinstance(params, WrightParams):
        result = wright_phi(params, spec.z, spec.deriv, config)
    else:
        if spec.deriv:
            raise DomainError("classical Bessel derivatives are not offered")
        result = classical_bessel(params.nu, spec.z, config)
    inputs = dict(params.descriptor(), z=spec.z, deriv=spec.deriv)
    if spec.norm is not None:
        inputs["norm"] = spec.norm
    return _document(spec, inputs, result.to_dict())


def _cache(spec: JobSpec) -> ZeroCache:
    return ZeroCache(resolve_config(spec.config()).cache_dir)


def _zeros(spec: JobSpec) -> dict:
    target = ZeroTarget(_params(spec), ZeroKind(spec.which))
    fetch = _cache(spec).source(spec.config())
    table = fetch(target, spec.count)
    return _document(spec, target.descriptor(), table.to_dict())


def _radius(spec: JobSpec) -> dict:
    target = _target(spec)
    fetch = _cache(spec).source(spec.config())
    both = dual_route(target, spec.config(), fetch)
    return _document(spec, target.descriptor(), both.to_dict())


def _verify(spec: JobSpec):
    target = _target(spec)
    config = spec.config()
    tol = DEFAULT_VERIFY_TOL if spec.tol is None else spec.tol
    fetch = _cache(spec).source(config)
    both = dual_route(target, config, fetch)
    oracle = oracle_radius(target, config=config)
    margin = uc_margin(target, both.direct.radius, config=config)
    difference = abs(oracle.radius - both.direct.radius)
    result = {
        "radius": both.direct.radius,
        "oracle_radius": oracle.radius,
        "oracle_difference": difference,
        "method_agreement": both.difference,
        "tol": tol,
        "agrees": bool(difference < tol and both.agrees(tol)),
        "margin_at_radius": margin.to_dict(),
        "oracle": oracle.to_dict(),
    }
    return _document(spec, target.descriptor(), result), result["agrees"]


def _sweep_points(spec: JobSpec) -> list:
    norms = [Norm(spec.norm)] if spec.norm else list(Norm)
    points = []
    if spec.family == "qbessel":
        kinds = [Kind(k) for k in spec.kind]
        for kind, norm, nu, q in product(kinds, norms, spec.nu, spec.q):
            if norm is Norm.F and not nu > 0:
                logger.debug("skipping f for nu=%g", nu)
                continue
            points.append(UCTarget(QBesselParams(kind, nu, q), norm))
    elif spec.family == "wright":
        for norm, rho, beta in product(norms, spec.rho, spec.beta):
            points.append(UCTarget(WrightParams(rho, beta), norm))
    else:
        raise DomainError("sweeps cover qbessel and wright only")
    return points


def _sweep_row(target: UCTarget, config, fetch) -> dict:
    both = dual_route(target, config, fetch)
    params = target.params
    if target.is_wright:
        kind, first, second = "", params.rho, params.beta
    else:
        kind, first, second = int(params.kind), params.nu, params.q
    return {
        "family": params.descriptor()["family"],
        "kind": kind,
        "norm": target.norm.value,
        "nu|rho": first,
        "q|beta": second,
        "radius": both.direct.radius,
        "residual": both.direct.residual,
        "method_agreement": both.difference,
        "domain_upper": both.direct.domain_upper,
    }


def _sweep(spec: JobSpec) -> pd.DataFrame:
    points = _sweep_points(spec)
    config = spec.config()
    fetch = _cache(spec).source(config)
    # map keeps grid order whatever order the workers finish in
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        rows = list(pool.map(lambda t: _sweep_row(t, config, fetch), points))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def _limit_check(spec: JobSpec) -> dict:
    config = spec.config()
    return {
        "qbessel_kind2": qbessel_limit_table(Kind.JACKSON2, config=config),
        "qbessel_kind3": qbessel_limit_table(Kind.JACKSON3, config=config),
        "wright_bessel": wright_bessel_table(config=config),
    }


def _emit_text(document: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for key, item in value.items():
                walk(f"{prefix}{key}.", item)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", document)
    return "\n".join(lines)


def _emit(spec: JobSpec, text: str):
    if spec.out is None:
        click.echo(text)
        return
    with open(spec.out, "w", encoding="utf-8") as handle:
        handle.write(text + "\n")


def _format_document(spec: JobSpec, document: dict) -> str:
    if spec.output == "text":
        return _emit_text(document)
    if spec.output == "csv":
        frame = pd.json_normalize(document["result"])
        return frame.to_csv(index=False).rstrip("\n")
    return json.dumps(document, indent=2)


def run(spec: JobSpec) -> int:
    """
    Runs one job, writes its artifact and returns the exit status
    """
    try:
        status = 0
        if spec.command == "sweep":
            frame = _sweep(spec)
            if spec.output == "json":
                text = json.dumps(
                    _document(
                        spec,
                        {"family": spec.family},
                        frame.to_dict(orient="records"),
                    ),
                    indent=2,
                )
            else:
                text = frame.to_csv(index=False).rstrip("\n")
        elif spec.command == "limit-check":
            tables = _limit_check(spec)
            if spec.output == "json":
                text = json.dumps(
                    _document(
                        spec,
                        {},
                        {
                            name: table.to_dict(orient="records")
                            for name, table in tables.items()
                        },
                    ),
                    indent=2,
                )
            elif spec.output == "csv":
                text = pd.concat(
                    tables, names=["table", "row"]
                ).to_csv().rstrip("\n")
            else:
                text = "\n\n".join(
                    f"{name}\n{table.to_string(index=False)}"
                    for name, table in tables.items()
                )
        else:
            if spec.command == "verify":
                document, agrees = _verify(spec)
                status = 0 if agrees else 2
            else:
                handler = {
                    "eval": _eval,
                    "zeros": _zeros,
                    "radius": _radius,
                }[spec.command]
                document = handler(spec)
            text = _format_document(spec, document)
    except ValueError as error:
        click.echo(f"invalid parameters: {error}", err=True)
        return 1
    except NumericalError as error:
        click.echo(f"numerical failure: {error}", err=True)
        return 2
    _emit(spec, text)
    return status


def _floats(_ctx, _param, value) -> List[float]:
    if value is None:
        return []
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError as error:
        raise click.BadParameter(str(error)) from error


def _kinds(_ctx, _param, value) -> List[int]:
    try:
        kinds = [int(v) for v in value.split(",") if v.strip()]
    except ValueError as error:
        raise click.BadParameter(str(error)) from error
    if not kinds or set(kinds) - {2, 3}:
        raise click.BadParameter(f"kinds must be 2 or 3, got {value!r}")
    return kinds


def common_options(function):
    """
    Family, parameter, output and cache options shared by every command
    """
    options = [
        click.option(
            "--family",
            type=click.Choice(FAMILIES),
            default="qbessel",
            show_default=True,
        ),
        click.option(
            "--kind",
            default="2",
            show_default=True,
            callback=_kinds,
            help="2 or 3; comma separated for sweep",
        ),
        click.option("--norm", type=click.Choice([n.value for n in Norm])),
        click.option("--nu", callback=_floats, help="comma separated"),
        click.option("--q", callback=_floats, help="comma separated"),
        click.option("--rho", callback=_floats, help="comma separated"),
        click.option("--beta", callback=_floats, help="comma separated"),
        click.option(
            "--format",
            "output",
            type=click.Choice(FORMATS),
            default="json",
            show_default=True,
        ),
        click.option("-o", "--out", type=click.Path(dir_okay=False)),
        click.option(
            "--cache-dir",
            type=click.Path(file_okay=False),
            help="overrides UC_RADIUS_CACHE",
        ),
        click.option(
            "--tol", type=float, help="agreement tolerance for verify"
        ),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def _run_command(command: str, **options):
    try:
        spec = JobSpec(command=command, **options)
    except ValueError as error:
        click.echo(f"invalid parameters: {error}", err=True)
        sys.exit(1)
    sys.exit(run(spec))


@click.group(invoke_without_command=True)
@click.option(
    "--job",
    type=click.Path(exists=True, dir_okay=False),
    help="run the JSON job file instead of a subcommand",
)
@click.option("-v", "--verbose", is_flag=True, help="debug logging")
@click.pass_context
def main(ctx, job, verbose):
    """
    Radii of uniform convexity for normalized q-Bessel and Wright functions
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if job is not None:
        try:
            spec = JobSpec.from_file(job)
        except (ValueError, TypeError) as error:
            click.echo(f"invalid job file: {error}", err=True)
            sys.exit(1)
        sys.exit(run(spec))
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command(name="eval")
@common_options
@click.option("--z", type=float, required=True)
@click.option("--deriv", type=click.IntRange(0, 2), default=0)
def eval_command(**options):
    """
    Evaluate J^(s), phi or J_nu, or a normalization with --norm
    """
    _run_command("eval", **options)


@main.command()
@common_options
@click.option(
    "--which",
    type=click.Choice([k.value for k in ZeroKind]),
    default="function",
    show_default=True,
)
@click.option("--count", type=click.IntRange(min=1), default=5)
def zeros(**options):
    """
    Print (and cache) the first zeros of a target function
    """
    _run_command("zeros", **options)


@main.command()
@common_options
def radius(**options):
    """
    Radius of uniform convexity by both routes
    """
    _run_command("radius", **options)


@main.command()
@common_options
def verify(**options):
    """
    Check a radius against the sampled circle criterion
    """
    _run_command("verify", **options)


@main.command()
@common_options
@click.option("--workers", type=click.IntRange(min=1), default=4)
def sweep(**options):
    """
    Radii over a parameter grid, one CSV row per grid point
    """
    source = click.get_current_context().get_parameter_source("output")
    if source is click.core.ParameterSource.DEFAULT:
        options["output"] = "csv"
    _run_command("sweep", **options)


@main.command(name="limit-check")
@common_options
def limit_check(**options):
    """
    Classical limit and Wright-Bessel identity error tables
    """
    _run_command("limit-check", **options)
