"""
Scenario files: flat `key = value` text with `#` comments.

    r = 1e7
    c = 1e5
    b = 50
    lambda = 0.01
    demand.kind = erlang
    demand.n = 3
    contract = coordinate
    contract.target = lump_sum
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from ..core.models import (
    DemandModel,
    EndogenousRenewal,
    ErlangTail,
    ExogenousRenewal,
    ExponentialTail,
    LumpSumPenaltyTerms,
    MarketParams,
    RenewalTerms,
    UnitPenaltyTerms,
    WholesaleTerms,
)
from ..errors import ParseError
from ..simulation.models import SimConfig
from .models import GRID_AXES, Directive, ExperimentGrid, Scenario

LOGGER = logging.getLogger(__name__)

MARKET_KEYS = {
    "r": "r",
    "c": "c",
    "k": "k",
    "b": "b",
    "lambda": "lam",
    "delta": "delta",
    "reservation": "reservation",
}
DEMAND_KEYS = ("demand.kind", "demand.n", "demand.lambda", "demand.base")
CONTRACT_KEYS = ("contract", "contract.w", "contract.rho", "contract.rho1", "contract.mode",
                 "contract.renewal_prob", "contract.target")
SIM_KEYS = ("sim.seed", "sim.replications", "sim.horizon_cap")
KNOWN_KEYS = tuple(MARKET_KEYS) + DEMAND_KEYS + CONTRACT_KEYS + SIM_KEYS
INTEGER_KEYS = ("demand.n", "sim.seed", "sim.replications", "sim.horizon_cap")
WORD_KEYS = ("demand.kind", "contract", "contract.mode", "contract.target")

# key -> (raw value, line, column of the value)
Entries = Dict[str, Tuple[str, int, int]]


def _tokenize(text: str, path: Optional[str]) -> Entries:
    entries: Entries = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key_col = len(line) - len(line.lstrip()) + 1
        if "=" not in line:
            raise ParseError("expected 'key = value'", line_no, key_col, path)
        left, right = line.split("=", 1)
        key = left.strip()
        if key not in KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", line_no, key_col, path)
        if key in entries:
            raise ParseError(f"duplicate key {key!r} (first on line {entries[key][1]})", line_no, key_col, path)
        value = right.strip()
        value_col = len(left) + 2 + (len(right) - len(right.lstrip()))
        if not value:
            raise ParseError(f"missing value for {key!r}", line_no, value_col, path)
        entries[key] = (value, line_no, value_col)
    if not entries:
        raise ParseError("empty scenario", 1, 1, path)
    return entries


def _convert(entries: Entries, path: Optional[str]) -> Dict[str, Union[str, int, float]]:
    values: Dict[str, Union[str, int, float]] = {}
    for key, (raw, line, col) in entries.items():
        if key in WORD_KEYS:
            values[key] = raw
            continue
        try:
            values[key] = int(raw) if key in INTEGER_KEYS else float(raw)
        except ValueError:
            kind = "an integer" if key in INTEGER_KEYS else "a number"
            raise ParseError(f"{key} must be {kind}, got {raw!r}", line, col, path) from None
    return values


def _located(entries: Entries, key: str, path: Optional[str], message: str) -> ParseError:
    if key in entries:
        _, line, col = entries[key]
        return ParseError(message, line, col, path)
    return ParseError(message, 0, 0, path)


def _build_market(values: Dict, entries: Entries, path: Optional[str]) -> MarketParams:
    for required in ("r", "c", "lambda"):
        if required not in values:
            raise ParseError(f"missing required key {required!r}", 0, 0, path)
    fields = {field: values[key] for key, field in MARKET_KEYS.items() if key in values}
    try:
        return MarketParams(**fields)
    except ValidationError as exc:
        field = str(exc.errors()[0]["loc"][0])
        key = next((k for k, f in MARKET_KEYS.items() if f == field), field)
        raise _located(entries, key, path, f"invalid {key}: {exc.errors()[0]['msg']}") from None


def _build_demand(market: MarketParams, values: Dict, entries: Entries, path: Optional[str]) -> DemandModel:
    kind = values.get("demand.kind", "exponential")
    rate = values.get("demand.lambda", market.lam)
    base = values.get("demand.base", market.b)
    try:
        if kind == "exponential":
            if "demand.n" in values:
                raise _located(entries, "demand.n", path, "demand.n applies to erlang demand only")
            return DemandModel(base=base, tail=ExponentialTail(rate=rate))
        if kind == "erlang":
            if "demand.n" not in values:
                raise _located(entries, "demand.kind", path, "erlang demand needs demand.n")
            return DemandModel(base=base, tail=ErlangTail(rate=rate, shape=values["demand.n"]))
    except ValidationError as exc:
        raise _located(entries, "demand.kind", path, f"invalid demand: {exc.errors()[0]['msg']}") from None
    raise _located(entries, "demand.kind", path, f"unknown demand kind {kind!r}")


def _need(values: Dict, entries: Entries, key: str, path: Optional[str]) -> float:
    if key not in values:
        raise _located(entries, "contract", path, f"contract needs {key}")
    return values[key]


def _build_contract(market: MarketParams, values: Dict, entries: Entries, path: Optional[str]):
    kind = values.get("contract", "coordinate")
    try:
        if kind == "wholesale":
            return WholesaleTerms(w=_need(values, entries, "contract.w", path))
        if kind == "lump_sum":
            return LumpSumPenaltyTerms(w=_need(values, entries, "contract.w", path),
                                       rho=_need(values, entries, "contract.rho", path))
        if kind == "unit_penalty":
            return UnitPenaltyTerms(w=_need(values, entries, "contract.w", path),
                                    rho1=_need(values, entries, "contract.rho1", path))
        if kind == "renewal":
            mode_name = values.get("contract.mode", "endogenous")
            if mode_name == "exogenous":
                mode = ExogenousRenewal(prob=_need(values, entries, "contract.renewal_prob", path))
            elif mode_name == "endogenous":
                mode = EndogenousRenewal()
            else:
                raise _located(entries, "contract.mode", path, f"unknown renewal mode {mode_name!r}")
            return RenewalTerms(w=_need(values, entries, "contract.w", path), mode=mode)
        if kind in ("coordinate", "optimize"):
            default = "renewal" if market.delta is not None else ("lump_sum" if kind == "coordinate" else "wholesale")
            return Directive(kind=kind, target=values.get("contract.target", default))
    except ValidationError as exc:
        raise _located(entries, "contract", path, f"invalid contract: {exc.errors()[0]['msg']}") from None
    raise _located(entries, "contract", path, f"unknown contract {kind!r}")


def _build_sim(values: Dict, entries: Entries, path: Optional[str]) -> Optional[SimConfig]:
    fields = {key.split(".", 1)[1]: values[key] for key in SIM_KEYS if key in values}
    if not fields:
        return None
    try:
        return SimConfig(**fields)
    except ValidationError as exc:
        field = str(exc.errors()[0]["loc"][0])
        raise _located(entries, f"sim.{field}", path, f"invalid sim.{field}: {exc.errors()[0]['msg']}") from None


def parse_scenario(text: str, path: Optional[str] = None) -> Scenario:
    """
    Parse scenario text.

    Raises:
        ParseError: With the line and column of the offending entry
    """
    entries = _tokenize(text, path)
    values = _convert(entries, path)
    market = _build_market(values, entries, path)
    scenario = Scenario(
        market=market,
        demand=_build_demand(market, values, entries, path),
        contract=_build_contract(market, values, entries, path),
        sim=_build_sim(values, entries, path),
    )
    LOGGER.debug("parsed scenario %s: %d keys", path or "<text>", len(entries))
    return scenario


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read scenario: {exc.strerror}", 0, 0, str(path)) from None
    return parse_scenario(text, str(path))


def render_scenario(scenario: Scenario) -> str:
    """Serialise a scenario back to key = value text; parse_scenario inverts it exactly."""
    m, d, contract = scenario.market, scenario.demand, scenario.contract
    lines: List[str] = [
        f"r = {m.r!r}",
        f"c = {m.c!r}",
        f"k = {m.k!r}",
        f"b = {m.b!r}",
        f"lambda = {m.lam!r}",
    ]
    if m.delta is not None:
        lines.append(f"delta = {m.delta!r}")
    lines.append(f"reservation = {m.reservation!r}")

    lines.append(f"demand.kind = {d.tail.kind}")
    if d.tail.kind == "erlang":
        lines.append(f"demand.n = {d.shape}")
    lines.append(f"demand.lambda = {d.rate!r}")
    lines.append(f"demand.base = {d.base!r}")

    lines.append(f"contract = {contract.kind}")
    if isinstance(contract, Directive):
        lines.append(f"contract.target = {contract.target}")
    else:
        lines.append(f"contract.w = {contract.w!r}")
    if isinstance(contract, LumpSumPenaltyTerms):
        lines.append(f"contract.rho = {contract.rho!r}")
    elif isinstance(contract, UnitPenaltyTerms):
        lines.append(f"contract.rho1 = {contract.rho1!r}")
    elif isinstance(contract, RenewalTerms):
        lines.append(f"contract.mode = {contract.mode.kind}")
        if isinstance(contract.mode, ExogenousRenewal):
            lines.append(f"contract.renewal_prob = {contract.mode.prob!r}")

    if scenario.sim is not None:
        lines.append(f"sim.seed = {scenario.sim.seed}")
        lines.append(f"sim.replications = {scenario.sim.replications}")
        if scenario.sim.horizon_cap is not None:
            lines.append(f"sim.horizon_cap = {scenario.sim.horizon_cap}")
    return "\n".join(lines) + "\n"


def parse_grid(text: str, path: Optional[str] = None) -> ExperimentGrid:
    """
    Parse a grid file: `name = v1, v2, ...` per axis, a single value fixes a parameter,
    plus optional `metrics = ...` and `cap = N`.

    Raises:
        ParseError: With the line and column of the offending entry
    """
    axes: Dict[str, List[float]] = {}
    fixed: Dict[str, float] = {"c": 1.0, "k": 0.0}
    options: Dict[str, object] = {}
    seen: Dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key_col = len(line) - len(line.lstrip()) + 1
        if "=" not in line:
            raise ParseError("expected 'name = v1, v2, ...'", line_no, key_col, path)
        left, right = line.split("=", 1)
        key = left.strip()
        value_col = len(left) + 2 + (len(right) - len(right.lstrip()))
        if key in seen:
            raise ParseError(f"duplicate key {key!r} (first on line {seen[key]})", line_no, key_col, path)
        seen[key] = line_no
        items = [item.strip() for item in right.split(",") if item.strip()]
        if not items:
            raise ParseError(f"missing value for {key!r}", line_no, value_col, path)
        if key == "metrics":
            options["metrics"] = items
            continue
        try:
            if key == "cap":
                options["cap"] = int(items[0])
                continue
            values = [float(item) for item in items]
        except ValueError:
            raise ParseError(f"{key} values must be numbers", line_no, value_col, path) from None
        if key not in GRID_AXES:
            raise ParseError(f"unknown grid parameter {key!r}", line_no, key_col, path)
        if len(values) == 1:
            fixed[key] = values[0]
        else:
            axes[key] = values
    if not axes and len(seen) == 0:
        raise ParseError("empty grid", 1, 1, path)
    try:
        return ExperimentGrid(axes=axes, fixed=fixed, **options)
    except ValidationError as exc:
        raise ParseError(f"invalid grid: {exc.errors()[0]['msg']}", 0, 0, path) from None


def load_grid(path: Union[str, Path]) -> ExperimentGrid:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read grid: {exc.strerror}", 0, 0, str(path)) from None
    return parse_grid(text, str(path))
