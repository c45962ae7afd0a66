"""Elliptic curves over F_q(t): local data, L-functions, towers, heights."""

import json

from . import _ffec
from ._ffec import FfecError, catalog_names, delta, genus, l_coefficients, lemma_trials

__all__ = [
    "FfecError",
    "analyze",
    "berger",
    "catalog_names",
    "delta",
    "genus",
    "l_coefficients",
    "lemma_trials",
    "points",
    "tower",
]


def _load(report):
    out = json.loads(report.json)
    out["summary"] = report.summary
    return out


def analyze(text="", *, catalog="", p=0, param=0, max_place_deg=0, threads=1, tol=1e-9):
    """Local data, conductor and L-function of a curve given as file text or by catalog name."""
    return _load(_ffec.analyze(text, catalog, p, param, max_place_deg, threads, tol))


def tower(text="", *, catalog="", p=0, param=0, d=1, scan=0, mu=False, tol=1e-9):
    """L-function of the layer t -> t^(1/d), or a scan over d = q^n + 1."""
    return _load(_ffec.tower(text, catalog, p, param, d, scan, mu, tol))


def points(p, f=1, *, iters=6, tol=1e-3):
    """Explicit points of the Legendre family with their heights and Gram matrix."""
    return _load(_ffec.points(p, f, iters, tol))


def berger(catalog="", *, p=0, param=0, data=""):
    """Genus and rank constants for Berger data, from the catalog or from data text."""
    return _load(_ffec.berger(catalog, p, param, data))
