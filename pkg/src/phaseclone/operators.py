"""Square matrices of first-order phase polynomials.

A :class:`PhaseOperator` is the restriction of a linear map to the
phase-set of qubit states: a d x d matrix whose entries are first-order
polynomials in e^{i phi}.  A :class:`JointPhaseOperator` is the same thing
on a bipartite output with the row index laid out as ``i * dim2 + mu``
(system 1 major).  An :class:`UncorrelatedTriple` bundles a joint output
with its two marginals and can be validated against the product relation

    joint(phi) = out1(phi) (x) out2(phi) / P(phi),      P = trace(out1),

which is the probabilistic analogue of the deterministic tensor relation.
All values are immutable and the operations below are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trigpoly import (
    ZERO_COEFF_REL,
    FirstOrderPoly,
    NotDivisibleError,
    exact_div,
    mul,
)

__all__ = [
    "PhaseOperator",
    "JointPhaseOperator",
    "UncorrelatedTriple",
    "PhaseState",
    "RelationReport",
    "ZeroProbabilityError",
    "ZeroProbabilityAtPhaseError",
    "eval_matrix",
    "coefficient_arrays",
    "trace_poly",
    "partial_trace",
    "is_hermitian_preserving",
    "tensor",
    "max_coeff_diff",
    "validate_triple",
    "phase_state_operator",
    "normalized_output",
]


class ZeroProbabilityError(ValueError):
    """The success probability polynomial vanishes identically."""


class ZeroProbabilityAtPhaseError(ZeroDivisionError):
    """P(phi) = 0 at the requested phase, so there is no output state."""


def _as_poly(value) -> FirstOrderPoly:
    if isinstance(value, FirstOrderPoly):
        return value
    if isinstance(value, (int, float, complex)):
        return FirstOrderPoly.constant(value)
    a, b, c = value
    return FirstOrderPoly(a, b, c)


@dataclass(frozen=True)
class PhaseOperator:
    """d x d matrix of first-order phase polynomials."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_as_poly(e) for e in row) for row in self.entries)
        d = len(rows)
        if d < 1 or any(len(row) != d for row in rows):
            raise ValueError("entries must form a nonempty square matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows) -> "PhaseOperator":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, dim: int) -> "PhaseOperator":
        z = FirstOrderPoly.zero()
        return cls(tuple(tuple(z for _ in range(dim)) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> FirstOrderPoly:
        return self.entries[i][j]

    def max_abs(self) -> float:
        return max(e.max_abs() for row in self.entries for e in row)


@dataclass(frozen=True)
class JointPhaseOperator(PhaseOperator):
    """Bipartite output matrix, row/column index = i * dim2 + mu."""

    dim1: int
    dim2: int

    def __post_init__(self):
        super().__post_init__()
        if self.dim1 < 1 or self.dim2 < 1 or self.dim != self.dim1 * self.dim2:
            raise ValueError(
                f"joint dimension {self.dim} != dim1 * dim2 = {self.dim1 * self.dim2}"
            )

    def entry4(self, i: int, j: int, mu: int, nu: int) -> FirstOrderPoly:
        """Entry indexed by the two subsystem index pairs (i, j) and (mu, nu)."""
        return self.entries[i * self.dim2 + mu][j * self.dim2 + nu]


@dataclass(frozen=True)
class UncorrelatedTriple:
    """A joint output together with the two claimed marginals."""

    joint: JointPhaseOperator
    out1: PhaseOperator
    out2: PhaseOperator

    def __post_init__(self):
        if self.joint.dim1 != self.out1.dim or self.joint.dim2 != self.out2.dim:
            raise ValueError("joint block dimensions do not match the marginals")


@dataclass(frozen=True)
class PhaseState:
    """Pure qubit state sqrt(q)|0> + sqrt(1-q) e^{i phi} |1> for fixed q."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (math.isfinite(q) and 0.0 < q < 1.0):
            raise ValueError(f"q must lie strictly between 0 and 1, got {q!r}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class RelationReport:
    """Outcome of checking a triple against the product relation."""

    probability: FirstOrderPoly
    traces_equal: bool
    relation_holds: bool
    partial_traces_consistent: bool
    max_residual: float

    @property
    def all_ok(self) -> bool:
        return self.traces_equal and self.relation_holds and self.partial_traces_consistent


def eval_matrix(op: PhaseOperator, phi: float) -> np.ndarray:
    """Entrywise evaluation at a single phase."""
    d = op.dim
    out = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            out[i, j] = op.entries[i][j].eval(phi)
    return out


def coefficient_arrays(op: PhaseOperator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three coefficient matrices (A, B, C) with op = A e^{i phi} + B e^{-i phi} + C."""
    d = op.dim
    A = np.empty((d, d), dtype=complex)
    B = np.empty((d, d), dtype=complex)
    C = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = op.entries[i][j]
            A[i, j], B[i, j], C[i, j] = e.a, e.b, e.c
    return A, B, C


def trace_poly(op: PhaseOperator) -> FirstOrderPoly:
    """Coefficientwise sum of the diagonal entries."""
    t = FirstOrderPoly.zero()
    for i in range(op.dim):
        t = t + op.entries[i][i]
    return t


def partial_trace(joint: JointPhaseOperator, keep: int) -> PhaseOperator:
    """Trace out one subsystem, coefficientwise."""
    d1, d2 = joint.dim1, joint.dim2
    if keep == 1:
        rows = []
        for i in range(d1):
            row = []
            for j in range(d1):
                s = FirstOrderPoly.zero()
                for mu in range(d2):
                    s = s + joint.entries[i * d2 + mu][j * d2 + mu]
                row.append(s)
            rows.append(tuple(row))
        return PhaseOperator(tuple(rows))
    if keep == 2:
        rows = []
        for mu in range(d2):
            row = []
            for nu in range(d2):
                s = FirstOrderPoly.zero()
                for i in range(d1):
                    s = s + joint.entries[i * d2 + mu][i * d2 + nu]
                row.append(s)
            rows.append(tuple(row))
        return PhaseOperator(tuple(rows))
    raise ValueError("keep must be 1 or 2")


def is_hermitian_preserving(op: PhaseOperator, tol: float = 1e-10) -> bool:
    """Entrywise conjugate-transposed coefficient symmetry.

    The output matrix is Hermitian at every phi iff for all i, j:
    ``a[j,i] = conj(b[i,j])``, ``b[j,i] = conj(a[i,j])`` and
    ``c[j,i] = conj(c[i,j])``.
    """
    d = op.dim
    for i in range(d):
        for j in range(i, d):
            p, q = op.entries[i][j], op.entries[j][i]
            if (
                abs(q.a - p.b.conjugate()) > tol
                or abs(q.b - p.a.conjugate()) > tol
                or abs(q.c - p.c.conjugate()) > tol
            ):
                return False
    return True


def tensor(o1: PhaseOperator, o2: PhaseOperator) -> tuple:
    """Kronecker product with entrywise polynomial multiplication.

    Returns a (d1*d2) x (d1*d2) nested tuple of :class:`LaurentPoly`;
    entries may carry genuine second-order content.
    """
    d1, d2 = o1.dim, o2.dim
    rows = []
    for i in range(d1):
        for mu in range(d2):
            row = []
            for j in range(d1):
                for nu in range(d2):
                    row.append(mul(o1.entries[i][j], o2.entries[mu][nu]))
            rows.append(tuple(row))
    return tuple(rows)


def max_coeff_diff(op1: PhaseOperator, op2: PhaseOperator) -> float:
    if op1.dim != op2.dim:
        raise ValueError("dimension mismatch")
    return max(
        op1.entries[i][j].distance(op2.entries[i][j])
        for i in range(op1.dim)
        for j in range(op1.dim)
    )


def validate_triple(t: UncorrelatedTriple, tol: float = 1e-9) -> RelationReport:
    """Check traces, the product relation and the partial traces of a triple.

    The relation is tested entrywise: the product of the two marginal
    entries must divide by P back to the corresponding joint entry.  The
    reported residual is the worst coefficientwise deviation between the
    quotient and the stored joint entry (or the division residual when no
    quotient exists).
    """
    P = trace_poly(t.out1)
    scale = max(t.joint.max_abs(), t.out1.max_abs(), t.out2.max_abs())
    if P.max_abs() <= ZERO_COEFF_REL * (1.0 + scale):
        raise ZeroProbabilityError("trace polynomial vanishes identically")

    traces_equal = (
        trace_poly(t.out2).distance(P) <= tol
        and trace_poly(t.joint).distance(P) <= tol
    )

    d1, d2 = t.out1.dim, t.out2.dim
    max_residual = 0.0
    divisible = True
    for i in range(d1):
        for j in range(d1):
            for mu in range(d2):
                for nu in range(d2):
                    prod = mul(t.out1.entries[i][j], t.out2.entries[mu][nu])
                    try:
                        q = exact_div(prod, P, tol)
                    except NotDivisibleError as err:
                        divisible = False
                        max_residual = max(max_residual, err.residual)
                        continue
                    max_residual = max(max_residual, q.distance(t.joint.entry4(i, j, mu, nu)))
    relation_holds = divisible and max_residual <= tol

    partial_ok = (
        max_coeff_diff(partial_trace(t.joint, 1), t.out1) <= tol
        and max_coeff_diff(partial_trace(t.joint, 2), t.out2) <= tol
    )

    return RelationReport(
        probability=P,
        traces_equal=traces_equal,
        relation_holds=relation_holds,
        partial_traces_consistent=partial_ok,
        max_residual=max_residual,
    )


def phase_state_operator(state) -> PhaseOperator:
    """Density matrix of the phase state as a 2 x 2 phase operator."""
    if not isinstance(state, PhaseState):
        state = PhaseState(state)
    q = state.q
    off = math.sqrt(q * (1.0 - q))
    return PhaseOperator.from_rows(
        [
            [FirstOrderPoly(0.0, 0.0, q), FirstOrderPoly(0.0, off, 0.0)],
            [FirstOrderPoly(off, 0.0, 0.0), FirstOrderPoly(0.0, 0.0, 1.0 - q)],
        ]
    )


def normalized_output(
    op: PhaseOperator, P: FirstOrderPoly, phi: float, tol: float = 1e-12
) -> np.ndarray:
    """The output state ``op(phi) / P(phi)``.

    Raises :class:`ZeroProbabilityAtPhaseError` when ``|P(phi)| <= tol``;
    there is no output at phases of zero success probability.
    """
    denom = P.eval(phi)
    if abs(denom) <= tol:
        raise ZeroProbabilityAtPhaseError(f"P({phi}) = {denom} is numerically zero")
    return eval_matrix(op, phi) / denom
