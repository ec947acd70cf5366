"""Support-uncertainty counters and the complete-incompatibility decision.

A basis pair is completely incompatible when every minor of every order of
its transition matrix is nonvanishing. The decision here is by exhaustive
enumeration of all minors, which is cheap up to dimension eight.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import config
from .errors import DimensionMismatch, DimensionTooLarge, IndexOutOfRange
from .linalg import as_complex, dagger, frobenius

MAX_MINOR_DIM = 8


@dataclass(frozen=True)
class SupportCount:
    """Number of components above threshold in each of the two bases.

    ``smallest_kept`` and ``largest_discarded`` expose how close the state
    came to the counting threshold, so borderline states are diagnosable
    rather than silently resolved.
    """

    n_a: int
    n_b: int
    eps: float
    smallest_kept: float | None
    largest_discarded: float | None

    @property
    def n_ab(self) -> int:
        return self.n_a + self.n_b


@dataclass(frozen=True)
class IncompatibilityReport:
    completely_incompatible: bool
    min_abs_minor: float
    argmin_order: int
    argmin_rows: tuple[int, ...]
    argmin_cols: tuple[int, ...]
    minors_checked: int
    eps: float


def _count(values_a: np.ndarray, values_b: np.ndarray, eps: float) -> SupportCount:
    mags = np.concatenate([values_a, values_b])
    kept = mags[mags > eps]
    discarded = mags[mags <= eps]
    return SupportCount(
        n_a=int(np.count_nonzero(values_a > eps)),
        n_b=int(np.count_nonzero(values_b > eps)),
        eps=eps,
        smallest_kept=float(kept.min()) if kept.size else None,
        largest_discarded=float(discarded.max()) if discarded.size else None,
    )


def support_counts_pure(psi, transition, eps: float | None = None) -> SupportCount:
    """Support sizes of a pure state in the two bases."""
    eps = config.default_tol() if eps is None else eps
    u = as_complex(transition, "transition matrix")
    v = as_complex(psi, "state")
    if v.ndim != 1 or v.shape[0] != u.shape[0]:
        raise DimensionMismatch(
            f"state shape {v.shape} does not match basis dimension {u.shape[0]}"
        )
    amps_a = np.abs(v)
    amps_b = np.abs(v @ np.conj(u))
    return _count(amps_a, amps_b, eps)


def support_counts_mixed(rho, transition, eps: float | None = None) -> SupportCount:
    """Counts of nonvanishing Born probabilities of a density matrix."""
    eps = config.default_tol() if eps is None else eps
    u = as_complex(transition, "transition matrix")
    r = as_complex(rho, "state")
    if r.ndim != 2 or r.shape != u.shape:
        raise DimensionMismatch(
            f"state shape {r.shape} does not match basis shape {u.shape}"
        )
    probs_a = np.abs(np.diagonal(r).real)
    probs_b = np.abs(np.diagonal(dagger(u) @ r @ u).real)
    return _count(probs_a, probs_b, eps)


def complete_incompatibility(transition, eps: float | None = None) -> IncompatibilityReport:
    """Decide complete incompatibility by enumerating every minor.

    All square minors of all orders are evaluated; the verdict is positive
    exactly when the smallest modulus exceeds ``eps``. The minimizing minor
    is reported, with ties broken lexicographically by
    ``(order, row_set, col_set)``.
    """
    eps = config.default_tol() if eps is None else eps
    u = as_complex(transition, "transition matrix")
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"transition matrix must be square, got {u.shape}")
    d = u.shape[0]
    if d > MAX_MINOR_DIM:
        raise DimensionTooLarge(
            f"minor enumeration is guarded to d <= {MAX_MINOR_DIM}, got {d}"
        )
    best_abs = np.inf
    best = (0, (), ())
    checked = 0
    for order in range(1, d + 1):
        subsets = list(combinations(range(d), order))
        pairs = [(r, c) for r in subsets for c in subsets]
        stacked = np.empty((len(pairs), order, order), dtype=complex)
        for k, (rows, cols) in enumerate(pairs):
            stacked[k] = u[np.ix_(rows, cols)]
        dets = np.abs(np.linalg.det(stacked))
        checked += len(pairs)
        k_min = int(np.argmin(dets))
        if dets[k_min] < best_abs:
            best_abs = float(dets[k_min])
            best = (order, pairs[k_min][0], pairs[k_min][1])
    return IncompatibilityReport(
        completely_incompatible=bool(best_abs > eps),
        min_abs_minor=best_abs,
        argmin_order=best[0],
        argmin_rows=best[1],
        argmin_cols=best[2],
        minors_checked=checked,
        eps=eps,
    )


def projector_commutator_norm(transition, a_set, b_set) -> float:
    """Frobenius norm of the commutator of two coarse-grained projectors.

    The first projector spans the selected computational basis vectors, the
    second the selected columns of the transition matrix. Both index sets
    must be proper nonempty subsets.
    """
    u = as_complex(transition, "transition matrix")
    d = u.shape[0]
    s = tuple(int(i) for i in a_set)
    t = tuple(int(j) for j in b_set)
    for name, idx in (("a_set", s), ("b_set", t)):
        if not 1 <= len(idx) < d:
            raise IndexOutOfRange(
                f"{name} must be a proper nonempty subset, got size {len(idx)} of {d}"
            )
        if len(set(idx)) != len(idx) or any(i < 0 or i >= d for i in idx):
            raise IndexOutOfRange(f"{name} {idx} is not a valid index set for d={d}")
    pa = np.zeros((d, d), dtype=complex)
    pa[s, s] = 1.0
    cols = u[:, t]
    pb = cols @ dagger(cols)
    return frobenius(pa @ pb - pb @ pa)
