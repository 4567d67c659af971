"""Parameter grids over state families, evaluated point by point.

Rows come out in row-major order over the axes as declared, so the CSV for a
given set of arguments is byte-identical from run to run.
"""

import io
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import bisect

from . import criteria
from .errors import EtfError
from .frames import get_povm
from .states import FAMILIES, make_state

BIPARTITE = ("thm1",)
TRIPARTITE = ("thm4", "thm5")


class ScanError(EtfError):
    def __init__(self, coords, cause):
        where = ", ".join(f"{k}={v!r}" for k, v in coords.items())
        super().__init__(f"scan failed at {where}: {cause}")
        self.coords = coords
        self.cause = cause


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    @property
    def values(self):
        if self.steps == 0:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps + 1)


def parse_axis(text):
    """``name=start:stop:steps`` (``steps`` intervals) or ``name=value``."""
    name, _, rng = text.partition("=")
    name = name.strip()
    if not name or not rng:
        raise ValueError(f"bad axis {text!r}; expected name=start:stop:steps or name=value")
    parts = rng.split(":")
    if len(parts) == 1:
        return Axis(name, float(parts[0]), float(parts[0]), 0)
    if len(parts) != 3:
        raise ValueError(f"bad axis range {rng!r}; expected start:stop:steps")
    steps = int(parts[2])
    if steps < 1:
        raise ValueError(f"axis {name!r} needs steps >= 1, got {steps}")
    return Axis(name, float(parts[0]), float(parts[1]), steps)


def parse_grid(text):
    return [parse_axis(item) for item in text.split(",") if item.strip()]


def parse_params(text):
    """``d=3,p=0.5`` -> ``{"d": "3", "p": "0.5"}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"bad parameter {item!r}; expected key=value")
        out[key.strip()] = value.strip()
    return out


def resolve_povms(spec, parties):
    """``"a"`` pairs ``a`` with ``conj:a`` (bipartite) or repeats it (tripartite); ``"a+b[+c]"`` is explicit."""
    names = spec.split("+")
    if len(names) == 1:
        names = [names[0], f"conj:{names[0]}"] if parties == 2 else names * parties
    if len(names) != parties:
        raise ValueError(f"POVM spec {spec!r} names {len(names)} parties, need {parties}")
    return tuple(get_povm(n) for n in names)


@dataclass
class ScanGrid:
    family: str
    axes: list
    criterion: str
    povms: str
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise KeyError(f"unknown state family {self.family!r}")
        if self.criterion not in BIPARTITE + TRIPARTITE:
            raise KeyError(f"unknown criterion {self.criterion!r}")
        expected = set(FAMILIES[self.family][1])
        given = {a.name for a in self.axes} | set(self.fixed)
        if given != expected:
            raise ValueError(
                f"family {self.family!r} takes parameters {sorted(expected)}; grid and fixed give {sorted(given)}"
            )

    @property
    def columns(self):
        cols = [a.name for a in self.axes] + ["statistic", "bound", "entangled"]
        if self.criterion == "thm5":
            cols.append("unfolding")
        return cols

    def points(self):
        names = [a.name for a in self.axes]
        for combo in product(*(a.values for a in self.axes)):
            yield dict(zip(names, (float(v) for v in combo)))


def evaluate(criterion, rho, povms, tolerance=criteria.VERDICT_TOL):
    """Single-verdict view of a criterion; for the unfoldings, the largest margin wins."""
    if criterion == "thm1":
        return criteria.theorem1(rho, *povms, tolerance=tolerance), None
    if criterion == "thm4":
        return criteria.theorem4(rho, *povms, tolerance=tolerance), None
    verdicts = criteria.theorem5(rho, *povms, tolerance=tolerance)
    best = max(range(3), key=lambda i: verdicts[i].margin)
    return verdicts[best], criteria.UNFOLDING_TAGS[best]


def run_scan(grid, tolerance=criteria.VERDICT_TOL):
    """Evaluate every grid point; returns a list of row tuples in output order."""
    parties = 2 if grid.criterion in BIPARTITE else 3
    povms = resolve_povms(grid.povms, parties)
    rows = []
    for coords in grid.points():
        try:
            rho = make_state(grid.family, **grid.fixed, **coords)
            verdict, tag = evaluate(grid.criterion, rho, povms, tolerance)
        except Exception as exc:
            raise ScanError(coords, exc) from exc
        row = [coords[a.name] for a in grid.axes]
        row += [verdict.statistic, verdict.bound, int(verdict.entangled)]
        if tag is not None:
            row.append(tag)
        rows.append(tuple(row))
    return rows


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(grid, rows, out=None):
    """Write the self-describing CSV block for one scan; returns the text if ``out`` is None."""
    buf = out if out is not None else io.StringIO()
    buf.write(f"# criterion={grid.criterion} povms={grid.povms} state={grid.family}\n")
    buf.write(",".join(grid.columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    if out is None:
        return buf.getvalue()
    return None


def read_csv(text):
    """Parse a scan block back into (header comment, column names, rows of strings)."""
    lines = [ln for ln in text.splitlines() if ln]
    comment = lines[0]
    cols = lines[1].split(",")
    return comment, cols, [ln.split(",") for ln in lines[2:]]


def locate_boundary(margin, lo, hi, xtol=1e-9):
    """Root of ``margin`` in ``[lo, hi]`` by bisection; the ends must differ in sign."""
    return bisect(margin, lo, hi, xtol=xtol, maxiter=200)
