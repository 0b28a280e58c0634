"""Finite zonal-harmonic expansions and the diagonal radial operators on them.

An expansion is a finite sum  f(x) = sum_i c_i Z_{k_i}(x, y_i)  with anchors
y_i in the closed unit ball.  Such sums are exactly harmonic, so they serve as
the concrete function representation on which the coefficient-diagonal
operators act: the parameterized family D (coefficient multipliers
gamma_k(s+t)/gamma_k(s)) and its boundary-weighted variant I.
"""

import json
from dataclasses import dataclass

import numpy as np

from .kernel import gamma_coefs

__all__ = [
    "HarmonicExpansion",
    "evaluate",
    "evaluate_many",
    "apply_D",
    "apply_I",
    "to_json",
    "from_json",
]


@dataclass
class HarmonicExpansion:
    dim: int
    degrees: np.ndarray
    anchors: np.ndarray
    coefs: np.ndarray

    @classmethod
    def from_terms(cls, dim, terms):
        """Build from an iterable of (k, y, c) triples."""
        terms = list(terms)
        degrees = np.array([int(k) for k, _, _ in terms], dtype=np.int64)
        anchors = np.array([np.asarray(y, dtype=float) for _, y, _ in terms], dtype=float)
        coefs = np.array([float(c) for _, _, c in terms], dtype=float)
        if len(terms) == 0:
            anchors = np.zeros((0, dim))
        exp = cls(int(dim), degrees, anchors, coefs)
        exp._validate()
        return exp

    def _validate(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if np.any(self.degrees < 0):
            raise ValueError("degrees must be non-negative")
        if self.anchors.shape != (len(self.degrees), self.dim):
            raise ValueError("anchor shape mismatch")
        norms = np.linalg.norm(self.anchors, axis=1)
        if np.any(norms > 1.0 + 1e-12):
            raise ValueError("anchors must lie in the closed unit ball")

    def terms(self):
        for k, y, c in zip(self.degrees, self.anchors, self.coefs):
            yield int(k), y.copy(), float(c)

    def __len__(self):
        return len(self.degrees)


def _zonal_terms_at(exp, x):
    """Z_{k_i}(x, y_i) for every term, vectorized over terms at a fixed x."""
    x = np.asarray(x, dtype=float)
    kk = exp.degrees
    tcount = len(kk)
    if tcount == 0:
        return np.zeros(0)
    rx = float(np.linalg.norm(x))
    ry = np.linalg.norm(exp.anchors, axis=1)
    prod = rx * ry
    safe = np.where(prod == 0.0, 1.0, prod)
    cost = np.clip((exp.anchors @ x) / safe, -1.0, 1.0)
    out = np.empty(tcount)
    zero_deg = kk == 0
    out[zero_deg] = 1.0
    live = (~zero_deg) & (prod > 0.0)
    out[(~zero_deg) & (prod == 0.0)] = 0.0
    if not np.any(live):
        return out
    k_live = kk[live]
    p_live = prod[live]
    t_live = cost[live]
    pw = p_live**k_live
    if exp.dim == 2:
        out[live] = 2.0 * pw * np.cos(k_live * np.arccos(t_live))
        return out
    lam = 0.5 * (exp.dim - 2.0)
    kmax = int(k_live.max())
    vals = np.empty_like(p_live)
    cm1 = np.ones_like(t_live)
    c = 2.0 * lam * t_live
    for k in range(1, kmax + 1):
        if k >= 2:
            cm1, c = c, (2.0 * t_live * (k + lam - 1.0) * c - (k + 2.0 * lam - 2.0) * cm1) / k
        sel = k_live == k
        if np.any(sel):
            scale = (exp.dim + 2.0 * k - 2.0) / (exp.dim - 2.0)
            vals[sel] = scale * c[sel]
    out[live] = pw * vals
    return out


def evaluate(exp, x):
    """Evaluate the expansion at a single point x."""
    return float(np.dot(exp.coefs, _zonal_terms_at(exp, x)))


def evaluate_many(exp, pts):
    """Evaluate at each row of pts; returns an array of values."""
    pts = np.asarray(pts, dtype=float)
    return np.array([evaluate(exp, p) for p in pts])


def apply_D(s, t, exp):
    """Coefficient-diagonal operator: scales the degree-k coefficient by
    gamma_k(s+t)/gamma_k(s).

    t = 0 is the exact identity (the multiplier is computed as a ratio of two
    identical table entries, hence exactly 1.0).  The inverse is apply_D with
    parameters (s+t, -t).
    """
    if len(exp) == 0:
        return HarmonicExpansion.from_terms(exp.dim, [])
    kmax = int(exp.degrees.max())
    table_from = gamma_coefs(kmax, float(s), exp.dim)
    table_to = gamma_coefs(kmax, float(s) + float(t), exp.dim)
    mult = table_to[exp.degrees] / table_from[exp.degrees]
    return HarmonicExpansion(exp.dim, exp.degrees.copy(), exp.anchors.copy(), exp.coefs * mult)


def apply_I(s, t, exp, x):
    """Boundary-weighted variant: (1 - |x|^2)^t times apply_D(s, t, exp) at x."""
    x = np.asarray(x, dtype=float)
    r2 = float(np.dot(x, x))
    return (1.0 - r2) ** float(t) * evaluate(apply_D(s, t, exp), x)


def to_json(exp):
    """Serialize as {"dim": n, "terms": [{"k": ..., "y": [...], "c": ...}]}."""
    obj = {
        "dim": exp.dim,
        "terms": [
            {"k": int(k), "y": [float(v) for v in y], "c": float(c)}
            for k, y, c in exp.terms()
        ],
    }
    return json.dumps(obj)


def from_json(text):
    """Parse the to_json format, or a bare array of {k, y, c} records with the
    dimension inferred from the first anchor; validates degrees and anchor
    radii."""
    obj = json.loads(text)
    if isinstance(obj, list):
        if not obj:
            raise ValueError("bare-array expansion needs at least one term to fix dim")
        records, dim = obj, len(obj[0]["y"])
    else:
        records, dim = obj["terms"], int(obj["dim"])
    terms = [(t["k"], t["y"], t["c"]) for t in records]
    return HarmonicExpansion.from_terms(dim, terms)
