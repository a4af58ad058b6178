"""JSON run configuration.

Schema (all blocks optional; unknown keys are rejected at every level)::

    {
      "potential": {"V0": .., "V1": .., "S0": .., "S1": .., "q": .., "alpha": ..},
      "mass": {"m0": .., "m1": ..},
      "quantum": [{"n": 0, "l": 0, "D": 3}, ...],
      "omega_convention": "derived" | "printed",
      "tolerance": 1e-5,
      "search": {"E_min": .., "E_max": .., "grid_points": 400, "tol": 1e-12},
      "grid": {"r_min": .., "r_max": .., "points": 20000},
      "sweep": {"variable": "S0", "start": .., "stop": .., "samples": ..},
      "scatter": {"energies": [..]} or {"E_start": .., "E_stop": .., "samples": ..},
      "case": "general" | "hulthen" | "woods_saxon",
      "hulthen": {"V0": .., "q": .., "alpha": .., "m0": ..},
      "woods_saxon": {"V0": .., "R": .., "theta": .., "m0": ..},
      "output": "path.csv"
    }

``grid`` lengths are measured from the singular point ln(q)/(2 alpha).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .bound import OMEGA_CONVENTIONS, QuantumNumbers, SearchWindow
from .errors import ConfigError, KGSpecError
from .oracle import RadialGrid
from .potential import MassParams, PotentialParams
from .scatter import HulthenParams, WoodsSaxonParams

SWEEP_VARIABLES = ("V0", "V1", "S0", "S1", "q", "alpha", "m1")
CASES = ("general", "hulthen", "woods_saxon")

_TOP_KEYS = {
    "potential", "mass", "quantum", "omega_convention", "tolerance", "search", "grid",
    "sweep", "scatter", "case", "hulthen", "woods_saxon", "output",
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    samples: int

    def values(self) -> list[float]:
        if self.samples == 1:
            return [self.start]
        step = (self.stop - self.start) / (self.samples - 1)
        return [self.start + i * step for i in range(self.samples)]


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialParams = field(default_factory=PotentialParams)
    mass: MassParams = field(default_factory=MassParams)
    quantum: tuple[QuantumNumbers, ...] | None = None
    omega_convention: str = "derived"
    tolerance: float = 1e-5
    search: SearchWindow = field(default_factory=SearchWindow)
    grid: RadialGrid | None = None
    sweep: SweepSpec | None = None
    energies: tuple[float, ...] | None = None
    case: str = "general"
    hulthen: HulthenParams | None = None
    woods_saxon: WoodsSaxonParams | None = None
    case_m0: float = 1.0
    output: str | None = None


def _check_keys(block: dict, allowed: set[str], where: str) -> None:
    if not isinstance(block, dict):
        raise ConfigError(f"{where} must be a JSON object")
    extra = set(block) - allowed
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")


def _num(block: dict, key: str, where: str, default=None, integer: bool = False):
    if key not in block:
        if default is None:
            raise ConfigError(f"{where}.{key} is required")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {v!r}")
    if integer:
        if int(v) != v:
            raise ConfigError(f"{where}.{key} must be an integer, got {v!r}")
        return int(v)
    return float(v)


def from_dict(doc: dict) -> RunConfig:
    """Build and validate a RunConfig; raises ConfigError on any problem."""
    _check_keys(doc, _TOP_KEYS, "config")
    try:
        return _build(doc)
    except ConfigError:
        raise
    except (KGSpecError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _build(doc: dict) -> RunConfig:
    kw: dict = {}
    if "potential" in doc:
        b = doc["potential"]
        keys = ("V0", "V1", "S0", "S1", "q", "alpha")
        _check_keys(b, set(keys), "potential")
        defaults = PotentialParams()
        kw["potential"] = PotentialParams(**{k: _num(b, k, "potential", getattr(defaults, k)) for k in keys})
    if "mass" in doc:
        b = doc["mass"]
        _check_keys(b, {"m0", "m1"}, "mass")
        kw["mass"] = MassParams(_num(b, "m0", "mass", 1.0), _num(b, "m1", "mass", 0.0))
    if "quantum" in doc:
        lst = doc["quantum"]
        if not isinstance(lst, list) or not lst:
            raise ConfigError("quantum must be a non-empty list")
        qns = []
        for i, b in enumerate(lst):
            where = f"quantum[{i}]"
            _check_keys(b, {"n", "l", "D"}, where)
            qns.append(QuantumNumbers(_num(b, "n", where, 0, True), _num(b, "l", where, 0, True),
                                      _num(b, "D", where, 3, True)))
        kw["quantum"] = tuple(qns)
    if "omega_convention" in doc:
        if doc["omega_convention"] not in OMEGA_CONVENTIONS:
            raise ConfigError(f"omega_convention must be one of {OMEGA_CONVENTIONS}")
        kw["omega_convention"] = doc["omega_convention"]
    if "tolerance" in doc:
        kw["tolerance"] = _num(doc, "tolerance", "config")
        if not kw["tolerance"] > 0:
            raise ConfigError("tolerance must be positive")
    if "search" in doc:
        b = doc["search"]
        _check_keys(b, {"E_min", "E_max", "grid_points", "tol"}, "search")
        kw["search"] = SearchWindow(
            E_min=_num(b, "E_min", "search") if "E_min" in b else None,
            E_max=_num(b, "E_max", "search") if "E_max" in b else None,
            grid_points=_num(b, "grid_points", "search", 400, True),
            tol=_num(b, "tol", "search", 1e-12),
        )
    if "grid" in doc:
        b = doc["grid"]
        _check_keys(b, {"r_min", "r_max", "points"}, "grid")
        pot = kw.get("potential", PotentialParams())
        g = RadialGrid(_num(b, "r_min", "grid", 1e-6 / pot.alpha), _num(b, "r_max", "grid", 14.0 / pot.alpha),
                       _num(b, "points", "grid", 20000, True))
        g.validate(pot)
        kw["grid"] = g
    if "sweep" in doc:
        b = doc["sweep"]
        _check_keys(b, {"variable", "start", "stop", "samples"}, "sweep")
        var = b.get("variable")
        if var not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep.variable must be one of {SWEEP_VARIABLES}, got {var!r}")
        samples = _num(b, "samples", "sweep", None, True)
        if samples < 2:
            raise ConfigError("sweep.samples must be >= 2")
        kw["sweep"] = SweepSpec(var, _num(b, "start", "sweep"), _num(b, "stop", "sweep"), samples)
    if "scatter" in doc:
        b = doc["scatter"]
        _check_keys(b, {"energies", "E_start", "E_stop", "samples"}, "scatter")
        if "energies" in b:
            if set(b) != {"energies"}:
                raise ConfigError("scatter: give either energies or E_start/E_stop/samples")
            es = b["energies"]
            if not isinstance(es, list) or not es:
                raise ConfigError("scatter.energies must be a non-empty list")
            kw["energies"] = tuple(_num({"e": e}, "e", "scatter.energies") for e in es)
        else:
            n = _num(b, "samples", "scatter", None, True)
            if n < 1:
                raise ConfigError("scatter.samples must be >= 1")
            a, z = _num(b, "E_start", "scatter"), _num(b, "E_stop", "scatter")
            kw["energies"] = tuple(a + (z - a) * i / (n - 1) for i in range(n)) if n > 1 else (a,)
    if "case" in doc:
        if doc["case"] not in CASES:
            raise ConfigError(f"case must be one of {CASES}")
        kw["case"] = doc["case"]
    if "hulthen" in doc:
        b = doc["hulthen"]
        _check_keys(b, {"V0", "q", "alpha", "m0"}, "hulthen")
        kw["hulthen"] = HulthenParams(_num(b, "V0", "hulthen"), _num(b, "q", "hulthen", 1.0),
                                      _num(b, "alpha", "hulthen"))
        kw["hulthen"].general()  # validates q, alpha
        kw["case_m0"] = _num(b, "m0", "hulthen", 1.0)
    if "woods_saxon" in doc:
        b = doc["woods_saxon"]
        _check_keys(b, {"V0", "R", "theta", "m0"}, "woods_saxon")
        kw["woods_saxon"] = WoodsSaxonParams(_num(b, "V0", "woods_saxon"), _num(b, "R", "woods_saxon"),
                                             _num(b, "theta", "woods_saxon"))
        kw["case_m0"] = _num(b, "m0", "woods_saxon", 1.0)
    case = kw.get("case", "general")
    if case == "hulthen" and "hulthen" not in kw:
        raise ConfigError("case 'hulthen' needs a hulthen block")
    if case == "woods_saxon" and "woods_saxon" not in kw:
        raise ConfigError("case 'woods_saxon' needs a woods_saxon block")
    if "output" in doc:
        if not isinstance(doc["output"], str):
            raise ConfigError("output must be a string path")
        kw["output"] = doc["output"]
    return RunConfig(**kw)


def load(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return from_dict(doc)


def load_preset(name: str) -> RunConfig:
    """Load one of the bundled presets: table1, hulthen, woods_saxon."""
    ref = resources.files("kgspec.presets").joinpath(f"{name}.json")
    if not ref.is_file():
        raise ConfigError(f"no preset named {name!r}")
    return from_dict(json.loads(ref.read_text(encoding="utf-8")))
