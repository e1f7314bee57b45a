"""Exact symbolic autocorrelation.

Treating the letters as indeterminates, every lag of the autocorrelation is a
quadratic form in alpha_1..alpha_K with integer coefficients. Equality of those
forms is what "equal autocorrelation for a generic alphabet" means.
"""
import math
from typing import List, Tuple

import numpy as np

from src.core import Alphabet, AutocorrForm, OrderedPartition
from src.core.errors import ArityMismatchError, RingMismatchError

ROOT_IMAG_TOL = 1e-9
ROOT_RESIDUAL_TOL = 1e-9


def directed_pair_counts(P: OrderedPartition) -> np.ndarray:
    """D[l, i, j] = #{u : u in A_i and u + l in A_j}."""
    n, k = P.ring.n, P.k
    labels = P.labels()
    lags = np.arange(n)[:, np.newaxis]
    partner = labels[(np.arange(n)[np.newaxis, :] + lags) % n]
    flat = (lags * k * k + labels[np.newaxis, :] * k + partner).ravel()
    return np.bincount(flat, minlength=n * k * k).reshape(n, k, k)


def autocorr_form(P: OrderedPartition) -> AutocorrForm:
    directed = directed_pair_counts(P)
    coeffs = directed + directed.transpose(0, 2, 1)
    diag = np.arange(P.k)
    coeffs[:, diag, diag] = directed[:, diag, diag]
    return AutocorrForm(P.ring, P.k, coeffs)


def evaluate(F: AutocorrForm, alphabet: Alphabet) -> np.ndarray:
    """Numeric autocorrelation obtained by substituting the letters into each form."""
    if alphabet.k != F.k:
        raise ArityMismatchError(f"Form has {F.k} letters, alphabet has {alphabet.k}")
    letters = np.asarray(alphabet.letters, dtype=np.float64)
    weights = np.triu(np.outer(letters, letters))
    return (F.coeffs * weights).sum(axis=(1, 2))


def _check_comparable(F: AutocorrForm, G: AutocorrForm) -> None:
    if F.ring != G.ring:
        raise RingMismatchError(f"Forms live on N={F.ring.n} and N={G.ring.n}")
    if F.k != G.k:
        raise ArityMismatchError(f"Forms have {F.k} and {G.k} letters")


def forms_equal(F: AutocorrForm, G: AutocorrForm) -> bool:
    _check_comparable(F, G)
    return bool(np.array_equal(F.coeffs, G.coeffs))


def sparse_view(F: AutocorrForm) -> np.ndarray:
    """Coefficients that survive when alpha_1 = 0."""
    return F.coeffs[:, 1:, 1:]


def forms_equal_sparse(F: AutocorrForm, G: AutocorrForm) -> bool:
    _check_comparable(F, G)
    if F.k < 2:
        raise ArityMismatchError("A sparse alphabet needs at least one nonzero letter (K >= 2)")
    return bool(np.array_equal(sparse_view(F), sparse_view(G)))


def distance_view(F: AutocorrForm) -> Tuple[Tuple[int, ...], ...]:
    """Fold the form into difference multisets, laid out like ``homometry_key``.

    Diagonal coefficients are directed self counts. An off-diagonal coefficient
    at lag l already holds the pairs at l and at N - l, so folding it counts every
    distance twice.
    """
    n, half = F.ring.n, F.ring.half
    view = []
    for i in range(F.k):
        for j in range(i, F.k):
            c = F.coeffs[:, i, j]
            if i == j:
                mult = [int(c[0])] + [int(c[d]) if 2 * d != n else int(c[d]) // 2 for d in range(1, half + 1)]
            else:
                mult = [int(c[0]) // 2] + [
                    int(c[d]) // 2 if 2 * d == n else (int(c[d]) + int(c[n - d])) // 2 for d in range(1, half + 1)
                ]
            view.append(tuple(mult))
    return tuple(view)


def collision_ratios(F: AutocorrForm, G: AutocorrForm) -> List[float]:
    """Letter ratios t = alpha_1 / alpha_2 at which two different 2-letter forms agree.

    Each lag contributes m t^2 + p t + n = 0 with (m, n, p) the coefficient
    differences; the collisions are the common real roots, t = 1 excluded since
    letters are distinct. ``inf`` stands for alpha_2 = 0. Equal forms collide
    everywhere and give an empty list.
    """
    _check_comparable(F, G)
    if F.k != 2:
        raise ArityMismatchError(f"Collision ratios are defined for two letters, got {F.k}")
    delta = F.coeffs - G.coeffs
    polys = [(int(d[0, 0]), int(d[0, 1]), int(d[1, 1])) for d in delta if d.any()]
    if not polys:
        return []
    ratios = []
    if all(m == 0 for m, _, _ in polys):
        ratios.append(math.inf)
    for root in np.roots(polys[0]):
        if abs(root.imag) > ROOT_IMAG_TOL:
            continue
        t = float(root.real)
        scale = max(1.0, t * t)
        if all(abs(m * t * t + p * t + q) <= ROOT_RESIDUAL_TOL * scale * (abs(m) + abs(p) + abs(q))
               for m, p, q in polys):
            if not math.isclose(t, 1.0) and not any(math.isclose(t, r, abs_tol=1e-12) for r in ratios):
                ratios.append(t)
    return sorted(ratios)
