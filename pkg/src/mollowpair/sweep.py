"""Parameter sweeps with closed-form fast paths and tabular serialization.

A sweep varies one parameter over a grid, evaluates the requested observables
at every point, records which computational path produced each value, and
serializes to CSV or JSON.  Closed forms are used where a pure regime at
resonance permits them (unless disabled), the moment solver otherwise;
spectra fall back from the pole decomposition to the integration oracle if
the regression matrix is defective.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from . import closed_forms
from .errors import (
    DegenerateEigenvectorError,
    SweepSpecError,
    UndefinedCorrelatorError,
    UnsupportedConfigurationError,
)
from .liouville import build_liouvillian, spectrum_fft
from .moments import build_moment_system, g2_cross, populations, steady_state
from .params import CONFIG_KEYS, Regime, SystemParams, classify_regime
from .spectrum import decompose_spectrum, default_grid, evaluate_spectrum

OBSERVABLES = ("populations", "g2", "spectrum", "decomposition", "eigenvalues")

#: Regimes whose populations and correlators have closed forms (resonant,
#: emitter 1 driven).
_FAST_REGIMES = (Regime.COHERENT, Regime.DISSIPATIVE, Regime.UNIDIRECTIONAL_FORWARD)


def _fmt(x: float) -> str:
    """Floating-point text with 17 significant digits (round-trip exact)."""
    return f"{x:.17g}"


@dataclass(frozen=True)
class GridSpec:
    """One-dimensional sweep grid: endpoints, count and spacing."""

    min: float
    max: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise SweepSpecError(f"grid count must be >= 2, got {self.count}")
        if self.scale not in ("linear", "log"):
            raise SweepSpecError(f"grid scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and self.min <= 0.0:
            raise SweepSpecError(f"log grids require min > 0, got {self.min}")
        if not (self.max > self.min):
            raise SweepSpecError(f"grid needs max > min, got [{self.min}, {self.max}]")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep, what to hold fixed, and what to record."""

    param: str
    grid: GridSpec
    fixed: dict[str, float] = field(default_factory=dict)
    observables: tuple[str, ...] = ("populations",)
    fastpath: bool = True
    spectrum_points: int = 2001

    def __post_init__(self):
        if self.param not in CONFIG_KEYS:
            raise SweepSpecError(
                f"unknown sweep parameter {self.param!r} (valid: {', '.join(CONFIG_KEYS)})"
            )
        if self.param in self.fixed:
            raise SweepSpecError(f"swept parameter {self.param!r} also appears in fixed parameters")
        for key in self.fixed:
            if key not in CONFIG_KEYS:
                raise SweepSpecError(f"unknown fixed parameter {key!r}")
        for obs in self.observables:
            if obs not in OBSERVABLES:
                raise SweepSpecError(
                    f"unknown observable {obs!r} (valid: {', '.join(OBSERVABLES)})"
                )
        if self.spectrum_points < 9:
            raise SweepSpecError("spectrum_points must be >= 9")
        object.__setattr__(self, "observables", tuple(self.observables))

    def point(self, value: float) -> SystemParams:
        return SystemParams(**{**self.fixed, self.param: float(value)})

    def as_dict(self) -> dict:
        return {
            "param": self.param,
            "grid": {"min": self.grid.min, "max": self.grid.max,
                     "count": self.grid.count, "scale": self.grid.scale},
            "fixed": dict(sorted(self.fixed.items())),
            "observables": list(self.observables),
            "fastpath": self.fastpath,
            "spectrum_points": self.spectrum_points,
        }


@dataclass(frozen=True)
class SpectrumBlock:
    """One spectrum: the swept value, its frequency grid and the density."""

    value: float
    grid: tuple[float, ...]
    values: tuple[float, ...]
    delta_weight: float


@dataclass(frozen=True)
class DecompositionBlock:
    """Pole table of one decomposition: rows (omega, gamma, L, K)."""

    value: float
    components: tuple[tuple[float, float, float, float], ...]
    delta_weight: float


@dataclass(frozen=True)
class SweepResult:
    """Tabular sweep output: scalar table plus optional per-point blocks."""

    spec: SweepSpec
    columns: tuple[str, ...]
    rows: tuple[tuple[float | None, ...], ...]
    regimes: tuple[str, ...]
    paths: tuple[str, ...]
    notes: tuple[str, ...]
    spectra: tuple[SpectrumBlock, ...] = ()
    decompositions: tuple[DecompositionBlock, ...] = ()
    version: str = __version__


def _scalar_columns(observables) -> list[str]:
    cols: list[str] = []
    if "populations" in observables:
        cols += ["rho00", "rho10", "rho01", "rho11"]
    if "g2" in observables:
        cols += ["g2"]
    if "spectrum" in observables or "decomposition" in observables:
        cols += ["delta_weight"]
    if "eigenvalues" in observables:
        for k in range(15):
            cols += [f"eig{k:02d}_re", f"eig{k:02d}_im"]
    return cols


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the requested observables at every grid point.

    Undefined observables (the zero-drive correlator) produce per-row null
    markers with a reason code instead of failing the run.
    """
    values = spec.grid.values()
    columns = [spec.param] + _scalar_columns(spec.observables)
    rows: list[tuple] = []
    regimes: list[str] = []
    paths: list[str] = []
    notes: list[str] = []
    spectra: list[SpectrumBlock] = []
    decomps: list[DecompositionBlock] = []

    want_state = "populations" in spec.observables or "g2" in spec.observables
    for value in values:
        p = spec.point(value)
        regime = classify_regime(p)
        regimes.append(regime.value)
        point_paths: list[str] = []
        point_notes: list[str] = []
        row: list[float | None] = [float(value)]

        use_fast = (
            spec.fastpath
            and regime in _FAST_REGIMES
            and p.delta == 0.0
            and p.omega2 == 0.0
        )
        state = None
        if want_state and not use_fast:
            state = steady_state(build_moment_system(p))

        if "populations" in spec.observables:
            if use_fast:
                pops = closed_forms.regime_populations(p, regime)
                point_paths.append("populations:closed-form")
            else:
                pops = populations(state)
                point_paths.append("populations:moments")
            row += [pops.rho00, pops.rho10, pops.rho01, pops.rho11]

        if "g2" in spec.observables:
            if p.omega1 == 0.0 and p.omega2 == 0.0:
                row.append(None)
                point_notes.append("g2:undefined-correlator")
                point_paths.append("g2:null")
            elif use_fast:
                row.append(closed_forms.regime_g2(p, regime))
                point_paths.append("g2:closed-form")
            else:
                try:
                    row.append(g2_cross(state))
                    point_paths.append("g2:moments")
                except UndefinedCorrelatorError:
                    row.append(None)
                    point_notes.append("g2:undefined-correlator")
                    point_paths.append("g2:null")

        if "spectrum" in spec.observables or "decomposition" in spec.observables:
            grid = default_grid(p, spec.spectrum_points)
            try:
                d = decompose_spectrum(p)
                row.append(d.delta_weight)
                if "decomposition" in spec.observables:
                    decomps.append(DecompositionBlock(
                        value=float(value),
                        components=tuple(
                            (c.omega_zeta, c.gamma_zeta, c.L_zeta, c.K_zeta)
                            for c in d.components
                        ),
                        delta_weight=d.delta_weight,
                    ))
                    point_paths.append("decomposition:eigendecomposition")
                if "spectrum" in spec.observables:
                    vals = evaluate_spectrum(d, grid)
                    spectra.append(SpectrumBlock(
                        value=float(value), grid=tuple(grid), values=tuple(vals),
                        delta_weight=d.delta_weight,
                    ))
                    point_paths.append("spectrum:eigendecomposition")
            except DegenerateEigenvectorError:
                if "decomposition" in spec.observables:
                    raise
                vals, delta = spectrum_fft(build_liouvillian(p), grid)
                row.append(delta)
                spectra.append(SpectrumBlock(
                    value=float(value), grid=tuple(grid), values=tuple(vals),
                    delta_weight=delta,
                ))
                point_paths.append("spectrum:fft-fallback")
            except UnsupportedConfigurationError as exc:
                row.append(None)
                point_notes.append(f"spectrum:{exc.args[0].split(';')[0]}")
                point_paths.append("spectrum:null")

        if "eigenvalues" in spec.observables:
            eigs = np.linalg.eigvals(build_moment_system(p).matrix)
            order = np.lexsort((eigs.imag, eigs.real))
            for z in eigs[order]:
                row += [float(z.real), float(z.imag)]
            point_paths.append("eigenvalues:moments")

        rows.append(tuple(row))
        paths.append(";".join(point_paths))
        notes.append(";".join(point_notes))

    return SweepResult(
        spec=spec,
        columns=tuple(columns),
        rows=tuple(rows),
        regimes=tuple(regimes),
        paths=tuple(paths),
        notes=tuple(notes),
        spectra=tuple(spectra),
        decompositions=tuple(decomps),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def emit(result: SweepResult, format: str = "csv") -> bytes:
    """Serialize a sweep result; identical results give identical bytes."""
    if format == "csv":
        return _emit_csv(result)
    if format == "json":
        return _emit_json(result)
    raise SweepSpecError(f"unknown output format {format!r} (valid: csv, json)")


def _emit_csv(result: SweepResult) -> bytes:
    out = io.StringIO()
    meta = {
        "schema": "mollowpair.sweep",
        "schema_version": 1,
        "artifact_version": result.version,
        "spec": result.spec.as_dict(),
        "regimes": list(result.regimes),
        "paths": list(result.paths),
        "notes": list(result.notes),
    }
    out.write(f"# {json.dumps(meta, sort_keys=True)}\n")
    if result.spec.observables:
        out.write(",".join(result.columns) + "\n")
        for row in result.rows:
            out.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")
    else:
        out.write(result.spec.param + "\n")
    for block in result.spectra:
        out.write(f"\n# spectrum {result.spec.param} = {_fmt(block.value)} "
                  f"delta_weight = {_fmt(block.delta_weight)}\n")
        out.write("omega,spectral_density\n")
        for w, s in zip(block.grid, block.values):
            out.write(f"{_fmt(w)},{_fmt(s)}\n")
    for block in result.decompositions:
        out.write(f"\n# decomposition {result.spec.param} = {_fmt(block.value)} "
                  f"delta_weight = {_fmt(block.delta_weight)}\n")
        out.write("omega_zeta,gamma_zeta,L_zeta,K_zeta\n")
        for comp in block.components:
            out.write(",".join(_fmt(x) for x in comp) + "\n")
    return out.getvalue().encode()


def _emit_json(result: SweepResult) -> bytes:
    doc = {
        "schema": "mollowpair.sweep",
        "schema_version": 1,
        "artifact_version": result.version,
        "spec": result.spec.as_dict(),
        "columns": list(result.columns),
        "rows": [list(r) for r in result.rows],
        "regimes": list(result.regimes),
        "paths": list(result.paths),
        "notes": list(result.notes),
        "spectra": [
            {"value": b.value, "delta_weight": b.delta_weight,
             "grid": list(b.grid), "values": list(b.values)}
            for b in result.spectra
        ],
        "decompositions": [
            {"value": b.value, "delta_weight": b.delta_weight,
             "components": [list(c) for c in b.components]}
            for b in result.decompositions
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=1).encode()


def parse_json(data: bytes | str) -> SweepResult:
    """Rebuild a SweepResult from its JSON serialization (emit inverse)."""
    doc = json.loads(data)
    if doc.get("schema") != "mollowpair.sweep" or doc.get("schema_version") != 1:
        raise SweepSpecError("not a mollowpair sweep document (schema mismatch)")
    sd = doc["spec"]
    spec = SweepSpec(
        param=sd["param"],
        grid=GridSpec(**sd["grid"]),
        fixed=dict(sd["fixed"]),
        observables=tuple(sd["observables"]),
        fastpath=sd["fastpath"],
        spectrum_points=sd["spectrum_points"],
    )
    return SweepResult(
        spec=spec,
        columns=tuple(doc["columns"]),
        rows=tuple(tuple(v for v in row) for row in doc["rows"]),
        regimes=tuple(doc["regimes"]),
        paths=tuple(doc["paths"]),
        notes=tuple(doc["notes"]),
        spectra=tuple(
            SpectrumBlock(b["value"], tuple(b["grid"]), tuple(b["values"]),
                          b["delta_weight"])
            for b in doc["spectra"]
        ),
        decompositions=tuple(
            DecompositionBlock(b["value"],
                               tuple(tuple(c) for c in b["components"]),
                               b["delta_weight"])
            for b in doc["decompositions"]
        ),
        version=doc["artifact_version"],
    )


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _load_preset_file() -> dict:
    text = resources.files("mollowpair").joinpath("data/presets.json").read_text()
    return json.loads(text)


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_load_preset_file()["presets"]))


def preset_description(name: str) -> str:
    entry = _load_preset_file()["presets"].get(name)
    if entry is None:
        raise SweepSpecError(f"unknown preset {name!r} (valid: {', '.join(preset_names())})")
    return entry["description"]


def load_preset(name: str, fastpath: bool = True) -> SweepSpec:
    """Build the SweepSpec of a named figure-reproduction preset."""
    entry = _load_preset_file()["presets"].get(name)
    if entry is None:
        raise SweepSpecError(f"unknown preset {name!r} (valid: {', '.join(preset_names())})")
    sw = entry["sweep"]
    return SweepSpec(
        param=sw["param"],
        grid=GridSpec(min=sw["min"], max=sw["max"], count=sw["count"], scale=sw["scale"]),
        fixed={k: float(v) for k, v in entry["fixed"].items()},
        observables=tuple(entry["observables"]),
        fastpath=fastpath,
    )
