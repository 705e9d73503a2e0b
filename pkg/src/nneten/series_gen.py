"""Signal generators (chaotic maps, random, periodic, binary, constant) and
the plain-text series file format consumed by the CLI."""

import math
from dataclasses import dataclass, field, replace

import numpy as np

DIVERGENCE_LIMIT = 1e10
PERIODIC_PHASE = 19625  # denominator inside the periodic map's sine argument

KINDS = ("logistic", "sine", "planck", "henon", "random", "periodic", "binary", "constant")

_CHAOTIC_DEFAULTS = {
    # kind: (x0, y0, discard)
    "logistic": (0.1, None, 1000),
    "sine": (0.1, None, 1000),
    "planck": (4.0, None, 1000),
    "henon": (0.1, 0.1, 1000),
}


class Divergence(ArithmeticError):
    """Map iteration left the bounded region (|state| > 1e10)."""


class InvalidParam(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class EmptySeries(ValueError):
    pass


@dataclass(frozen=True)
class MapParams:
    kind: str
    r: float = 0.0
    r1: float = 0.3
    a: float = 1.0
    seed: int = 0
    x0: float = 0.0
    y0: float = 0.0
    discard: int = 0

    def describe(self) -> dict:
        return {
            "kind": self.kind, "r": self.r, "r1": self.r1, "a": self.a,
            "seed": self.seed, "x0": self.x0, "y0": self.y0, "discard": self.discard,
        }


def default_params(kind: str, **overrides) -> MapParams:
    """Paper-default parameters for a map kind; keyword overrides win."""
    if kind not in KINDS:
        raise InvalidParam(f"unknown map kind {kind!r}")
    params = MapParams(kind=kind)
    if kind in _CHAOTIC_DEFAULTS:
        x0, y0, discard = _CHAOTIC_DEFAULTS[kind]
        params = replace(params, x0=x0, y0=y0 if y0 is not None else 0.0, discard=discard)
    return replace(params, **overrides)


@dataclass(frozen=True)
class TimeSeries:
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))

    def __len__(self):
        return len(self.values)


_MASK64 = (1 << 64) - 1


def splitmix64_next(state: int):
    """One step of the SplitMix64 generator; returns (new_state, output).

    state' = state + 0x9E3779B97F4A7C15 (mod 2^64); the output is the state
    scrambled by two xor-shift-multiply rounds (constants 0xBF58476D1CE4E5B9,
    0x94D049BB133111EB) and a final 31-bit xor-shift.
    """
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return state, z


def _random_uniform_stream(seed: int, n: int) -> np.ndarray:
    """n deterministic uniforms in [-0.5, 0.5): top 53 bits of SplitMix64 output."""
    out = np.empty(n)
    state = seed & _MASK64
    for i in range(n):
        state, z = splitmix64_next(state)
        out[i] = (z >> 11) * 2.0 ** -53 - 0.5
    return out


def _iterate_1d(step, x0: float, discard: int, n: int) -> np.ndarray:
    out = np.empty(n)
    x = float(x0)
    for i in range(-discard, n):
        if abs(x) > DIVERGENCE_LIMIT:
            raise Divergence(f"|x| exceeded {DIVERGENCE_LIMIT:g} at iterate {i}")
        if i >= 0:
            out[i] = x
        x = step(x)
    return out


def generate(params: MapParams, n: int) -> TimeSeries:
    """Generate n samples of the given map after dropping `params.discard` transients."""
    if n < 1:
        raise InvalidParam(f"series length must be >= 1, got {n}")
    kind = params.kind
    if kind == "logistic":
        values = _iterate_1d(lambda x: params.r * x * (1.0 - x), params.x0, params.discard, n)
    elif kind == "sine":
        values = _iterate_1d(lambda x: params.r * math.sin(math.pi * x), params.x0, params.discard, n)
    elif kind == "planck":
        values = _iterate_1d(lambda x: params.r * x ** 3 / (1.0 + math.exp(x)), params.x0, params.discard, n)
    elif kind == "henon":
        values = np.empty(n)
        x, y = float(params.x0), float(params.y0)
        for i in range(-params.discard, n):
            if abs(x) > DIVERGENCE_LIMIT or abs(y) > DIVERGENCE_LIMIT:
                raise Divergence(f"state exceeded {DIVERGENCE_LIMIT:g} at iterate {i}")
            if i >= 0:
                values[i] = x
            x, y = 1.0 - params.r * x * x + y, params.r1 * x
    elif kind == "random":
        values = _random_uniform_stream(params.seed, n)
    elif kind == "periodic":
        idx = np.arange(1, n + 1, dtype=np.float64)
        values = params.a * np.sin(idx * 20.0 * np.pi / PERIODIC_PHASE)
    elif kind == "binary":
        values = (np.arange(1, n + 1) % 2).astype(np.float64)
    elif kind == "constant":
        values = np.full(n, float(params.a))
    else:
        raise InvalidParam(f"unknown map kind {kind!r}")
    return TimeSeries(values, meta=params.describe())


def read_series(path) -> TimeSeries:
    """Read whitespace-separated numbers; '#' lines are comments."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            for token in stripped.split():
                try:
                    values.append(float(token))
                except ValueError:
                    raise ParseError(f"not a number: {token!r}", line=lineno) from None
    if not values:
        raise EmptySeries(f"no values in {path}")
    return TimeSeries(np.array(values), meta={"kind": "file", "path": str(path)})


def write_series(series: TimeSeries, path) -> None:
    """One value per line at full round-trip precision."""
    with open(path, "w", encoding="utf-8") as fh:
        for v in series.values:
            v = float(v)
            fh.write((str(int(v)) if v.is_integer() else repr(v)) + "\n")
