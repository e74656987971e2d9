"""Proportional state feedback equivalence for descriptor systems.

Two systems are P-feedback equivalent when one arises from the other by an
invertible row transformation S, a state coordinate change T, an input
coordinate change V and a proportional feedback F_P, acting as

    [E, A, B]  ->  [S E T, S(A T + B F_P), S B V].

This module provides

* the witness algebra (apply, compose, invert),
* the quasi P-feedback form (QPFF): a block upper triangular decomposition
  into a completely controllable part, an uncontrollable ODE part and a
  trivial-solution part, constructed from the augmented Wong limits,
* decoupling of a QPFF into block diagonal shape by solving coupled
  Sylvester-type equations,
* the fully canonical P-feedback form (PFF) as a template verifier built
  from shift and nilpotent blocks indexed by multi-indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .linalg import (Mat, Q, Subspace, complement, image_basis, kernel_basis,
                     solve_right)
from .pencils import full_rank_all_finite, pencil
from .sylvester import TwoEqInstance, solve_two_equations
from .wong import SystemTriple, wong_limits


# --------------------------------------------------------------------------
# canonical template atoms
# --------------------------------------------------------------------------

def lower_shift(k: int) -> Mat:
    """N_k: the k x k nilpotent with ones on the subdiagonal."""
    return Mat(k, k, [[1 if i == j + 1 else 0 for j in range(k)] for i in range(k)])


def tail_sel(k: int) -> Mat:
    """K_k = [0, I_{k-1}]: drops the first of k coordinates (0 x 1 for k = 1)."""
    return Mat(k - 1, k, [[1 if j == i + 1 else 0 for j in range(k)] for i in range(k - 1)])


def head_sel(k: int) -> Mat:
    """L_k = [I_{k-1}, 0]: drops the last of k coordinates (0 x 1 for k = 1)."""
    return Mat(k - 1, k, [[1 if j == i else 0 for j in range(k)] for i in range(k - 1)])


def last_unit(k: int) -> Mat:
    """The k-th standard basis column of Q^k."""
    return Mat(k, 1, [[1 if i == k - 1 else 0] for i in range(k)])


def _multi(mats) -> Mat:
    return Mat.block_diag(*mats) if mats else Mat.zeros(0, 0)


@dataclass(frozen=True)
class PffData:
    """Multi-index data (alpha, beta, gamma, delta, kappa) plus the
    uncontrollable-ODE coefficient block of a P-feedback form."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    delta: tuple[int, ...]
    kappa: tuple[int, ...]
    a_cbar: Mat

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "kappa"):
            idx = getattr(self, name)
            object.__setattr__(self, name, tuple(int(k) for k in idx))
            if any(k < 1 for k in getattr(self, name)):
                raise ValueError(f"multi-index {name} must contain positive integers")
        if self.a_cbar.rows != self.a_cbar.cols:
            raise ValueError("the uncontrollable block must be square")

    def dims(self, m: int | None = None) -> tuple[int, int, int]:
        """Total (l, n, m) of the template; m defaults to the minimal width."""
        a, b, g, d, k = self.alpha, self.beta, self.gamma, self.delta, self.kappa
        ncbar = self.a_cbar.rows
        l = (sum(a) - len(a)) + sum(b) + ncbar + sum(g) + sum(d) + sum(k)
        n = sum(a) + sum(b) + ncbar + sum(g) + (sum(d) - len(d)) + (sum(k) - len(k))
        m_min = len(b) + len(k)
        if m is None:
            m = m_min
        if m < m_min:
            raise ValueError("input count is too small for the beta and kappa blocks")
        return l, n, m


def make_canonical_blocks(data: PffData, m: int | None = None) -> SystemTriple:
    """The exact P-feedback form template for the given multi-index data.

    The input count ``m`` may exceed the minimal len(beta) + len(kappa); the
    surplus becomes zero columns between the beta and kappa input blocks.
    """
    l, n, m = data.dims(m)
    a, b, g, d, k = data.alpha, data.beta, data.gamma, data.delta, data.kappa
    e = Mat.block_diag(
        _multi([tail_sel(ai) for ai in a]),
        Mat.identity(sum(b)),
        Mat.identity(data.a_cbar.rows),
        _multi([lower_shift(gi) for gi in g]),
        _multi([tail_sel(di).T for di in d]),
        _multi([tail_sel(ki).T for ki in k]),
    )
    amat = Mat.block_diag(
        _multi([head_sel(ai) for ai in a]),
        _multi([lower_shift(bi).T for bi in b]),
        data.a_cbar,
        Mat.identity(sum(g)),
        _multi([head_sel(di).T for di in d]),
        _multi([head_sel(ki).T for ki in k]),
    )
    e_beta = _multi([last_unit(bi) for bi in b])
    e_kappa = _multi([last_unit(ki) for ki in k])
    r_beta = sum(a) - len(a)
    r_kappa = l - sum(k)
    bgrid = [[Q(0)] * m for _ in range(l)]
    for i in range(e_beta.rows):
        for j in range(e_beta.cols):
            bgrid[r_beta + i][j] = e_beta.data[i][j]
    for i in range(e_kappa.rows):
        for j in range(e_kappa.cols):
            bgrid[r_kappa + i][m - len(k) + j] = e_kappa.data[i][j]
    return SystemTriple(e, amat, Mat(l, m, bgrid))


def verify_pff(sys: SystemTriple, data: PffData) -> bool:
    """Exact comparison of sys against the template for ``data``.

    The multi-index order is taken literally; callers wanting permutation
    invariance must permute the data themselves.  Raises ValueError when the
    template dimensions cannot match sys at all.
    """
    l, n, _ = data.dims(sys.m)
    if (l, n) != (sys.l, sys.n):
        raise ValueError("template dimensions are inconsistent with the system")
    tpl = make_canonical_blocks(data, sys.m)
    return sys.E == tpl.E and sys.A == tpl.A and sys.B == tpl.B


# --------------------------------------------------------------------------
# witnesses
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PTransform:
    """An equivalence witness (S, T, V, F_P); S, T, V are checked invertible."""

    S: Mat
    T: Mat
    V: Mat
    F_P: Mat

    def __post_init__(self):
        for name in ("S", "T", "V"):
            m = getattr(self, name)
            if not m.is_invertible():
                raise ValueError(f"witness matrix {name} must be square invertible")
        if self.F_P.shape != (self.V.rows, self.T.rows):
            raise ValueError("F_P must be m x n")

    @classmethod
    def identity(cls, l: int, n: int, m: int) -> "PTransform":
        return cls(Mat.identity(l), Mat.identity(n), Mat.identity(m), Mat.zeros(m, n))


def apply_p_transform(sys: SystemTriple, w: PTransform) -> SystemTriple:
    """[S E T, S(A T + B F_P), S B V]."""
    if w.S.cols != sys.l or w.T.rows != sys.n or w.V.rows != sys.m:
        raise ValueError("witness dimensions do not fit the system")
    return SystemTriple(
        w.S @ sys.E @ w.T,
        w.S @ (sys.A @ w.T + sys.B @ w.F_P),
        w.S @ sys.B @ w.V,
    )


def compose_p(first: PTransform, second: PTransform) -> PTransform:
    """The single witness equal to applying ``first`` and then ``second``."""
    return PTransform(
        second.S @ first.S,
        first.T @ second.T,
        first.V @ second.V,
        first.F_P @ second.T + first.V @ second.F_P,
    )


def invert_p(w: PTransform) -> PTransform:
    """The witness undoing ``w``."""
    s_inv, t_inv, v_inv = w.S.inv(), w.T.inv(), w.V.inv()
    return PTransform(s_inv, t_inv, v_inv, -(v_inv @ w.F_P @ t_inv))


# --------------------------------------------------------------------------
# quasi P-feedback form
# --------------------------------------------------------------------------

class QpffBlockSizes(NamedTuple):
    l1: int
    l2: int
    l3: int
    n1: int
    n2: int
    n3: int
    m1: int
    m2: int  # dim ker B
    m3: int

    def fits(self, sys: SystemTriple) -> bool:
        return (self.l1 + self.l2 + self.l3 == sys.l
                and self.n1 + self.n2 + self.n3 == sys.n
                and self.m1 + self.m2 + self.m3 == sys.m)

    def signature(self) -> str:
        return (f"Sigma_{{{self.l1},{self.n1},{self.m1}}} / "
                f"Sigma_{{{self.l2},{self.n2},0}} / "
                f"Sigma_{{{self.l3},{self.n3},{self.m3}}}")


@dataclass(frozen=True)
class BasisSelection:
    """Full-column-rank bases splitting state and equation space along the
    augmented Wong limits."""

    U_T: Mat
    R_T: Mat
    O_T: Mat
    U_S: Mat
    R_S: Mat
    O_S: Mat

    @property
    def state_map(self) -> Mat:
        return Mat.hstack(self.U_T, self.R_T, self.O_T)

    @property
    def row_map_inv(self) -> Mat:
        return Mat.hstack(self.U_S, self.R_S, self.O_S)


def select_bases(sys: SystemTriple, variant: int = 0) -> BasisSelection:
    """Choose the six splitting bases from the augmented Wong limits.

    im U_T = V* n W*, im [U_T, R_T] = V*, im [U_T, R_T, O_T] = Q^n, and on
    the equation side im U_S = E V* n (A W* + im B), im [U_S, R_S] = E V*,
    with O_S drawn from the columns of B first so that
    im B <= im [U_S, O_S].  ``variant`` switches to a second deterministic
    complement choice (used to exercise block-size invariance).
    """
    rep = wong_limits(sys)
    vstar, wstar = rep.v_limit, rep.w_limit
    meet = vstar.intersect(wstar)
    u_t = meet.basis
    r_t = complement(meet, vstar, variant=variant)
    o_t = complement(vstar, Subspace.full(sys.n), variant=variant)
    ev = vstar.image_under(sys.E)
    awb = wstar.image_under(sys.A).sum(image_basis(sys.B))
    us_space = ev.intersect(awb)
    u_s = us_space.basis
    r_s = complement(us_space, ev, variant=variant)
    o_s = complement(ev, Subspace.full(sys.l), preferred=sys.B, variant=variant)
    sel = BasisSelection(u_t, r_t, o_t, u_s, r_s, o_s)
    if Mat.hstack(sel.U_S, sel.O_S, sys.B).rank() != sel.U_S.cols + sel.O_S.cols:
        raise AssertionError("im B escaped im [U_S, O_S]")
    return sel


@dataclass(frozen=True)
class QpffDecomposition:
    transformed: SystemTriple
    witness: PTransform
    block_sizes: QpffBlockSizes


def compute_qpff(sys: SystemTriple, variant: int = 0) -> QpffDecomposition:
    """Decompose sys into quasi P-feedback form.

    T gathers the state bases, S inverts the equation bases, the feedback
    components F_1, F_2 clear A below the first and second block rows, and V
    sorts the inputs into (effective, redundant, constrained).  The result
    always passes verify_qpff.
    """
    sel = select_bases(sys, variant)
    l1, l2, l3 = sel.U_S.cols, sel.R_S.cols, sel.O_S.cols
    n1, n2, n3 = sel.U_T.cols, sel.R_T.cols, sel.O_T.cols
    t = sel.state_map
    s = sel.row_map_inv.inv()
    sa = s @ sys.A
    sb = s @ sys.B

    f1 = solve_right(sb.sub(l1, sys.l, 0, sys.m), -(sa @ sel.U_T).sub(l1, sys.l, 0, n1))
    f2 = solve_right(sb.sub(l1 + l2, sys.l, 0, sys.m),
                     -(sa @ sel.R_T).sub(l1 + l2, sys.l, 0, n2))
    if f1 is None or f2 is None:
        raise AssertionError("feedback clearing equations must be solvable")
    f_p = Mat.hstack(f1, f2, Mat.zeros(sys.m, n3))

    ker_b = kernel_basis(sys.B)
    ker_bottom = kernel_basis(sb.sub(l1 + l2, sys.l, 0, sys.m))
    v2 = ker_b.basis
    v1 = complement(ker_b, ker_bottom, variant=variant)
    v3 = complement(ker_bottom, Subspace.full(sys.m), variant=variant)
    v = Mat.hstack(v1, v2, v3)
    m1, m2, m3 = v1.cols, v2.cols, v3.cols

    witness = PTransform(s, t, v, f_p)
    transformed = apply_p_transform(sys, witness)
    sizes = QpffBlockSizes(l1, l2, l3, n1, n2, n3, m1, m2, m3)
    report = verify_qpff(transformed, sizes)
    if not report.ok:
        raise AssertionError(f"constructed QPFF failed verification: {report.failures()}")
    return QpffDecomposition(transformed, witness, sizes)


@dataclass(frozen=True)
class FormReport:
    """Outcome of a structural form check, one entry per condition."""

    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.checks)

    def failures(self) -> list[str]:
        return [name for name, flag in self.checks if not flag]


def _qpff_blocks(sys: SystemTriple, z: QpffBlockSizes):
    r1, r2 = z.l1, z.l1 + z.l2
    c1, c2 = z.n1, z.n1 + z.n2
    b1, b2 = z.m1, z.m1 + z.m2
    return {
        "E11": sys.E.sub(0, r1, 0, c1), "E22": sys.E.sub(r1, r2, c1, c2),
        "E33": sys.E.sub(r2, sys.l, c2, sys.n),
        "A11": sys.A.sub(0, r1, 0, c1), "A22": sys.A.sub(r1, r2, c1, c2),
        "A33": sys.A.sub(r2, sys.l, c2, sys.n),
        "E12": sys.E.sub(0, r1, c1, c2), "E13": sys.E.sub(0, r1, c2, sys.n),
        "E23": sys.E.sub(r1, r2, c2, sys.n),
        "A12": sys.A.sub(0, r1, c1, c2), "A13": sys.A.sub(0, r1, c2, sys.n),
        "A23": sys.A.sub(r1, r2, c2, sys.n),
        "B11": sys.B.sub(0, r1, 0, b1), "B13": sys.B.sub(0, r1, b2, sys.m),
        "B33": sys.B.sub(r2, sys.l, b2, sys.m),
    }


def verify_qpff(sys: SystemTriple, sizes: QpffBlockSizes) -> FormReport:
    """Check the QPFF zero pattern and the three diagonal block conditions.

    (i) the leading block is a completely controllable underdetermined system
    with unconstrained, non-redundant input; (ii) the middle E block is
    square invertible; (iii) the trailing pencil with its input columns has
    full column rank at every finite lambda.  An entirely empty leading or
    trailing block passes its condition vacuously.
    """
    if not sizes.fits(sys):
        raise ValueError("block sizes do not sum to the system dimensions")
    z = sizes
    blk = _qpff_blocks(sys, z)
    r1, r2 = z.l1, z.l1 + z.l2
    b1, b2 = z.m1, z.m1 + z.m2
    checks: list[tuple[str, bool]] = []

    pattern = (
        sys.E.sub(r1, sys.l, 0, z.n1).is_zero()
        and sys.A.sub(r1, sys.l, 0, z.n1).is_zero()
        and sys.E.sub(r2, sys.l, z.n1, z.n1 + z.n2).is_zero()
        and sys.A.sub(r2, sys.l, z.n1, z.n1 + z.n2).is_zero()
        and sys.B.sub(0, r1, b1, b2).is_zero()
        and sys.B.sub(r1, r2, 0, sys.m).is_zero()
        and sys.B.sub(r2, sys.l, 0, b2).is_zero()
    )
    checks.append(("zero_pattern", pattern))

    if (z.l1, z.n1, z.m1) == (0, 0, 0):
        checks.append(("block1_controllable", True))
    else:
        aug_e = Mat.hstack(blk["E11"], Mat.zeros(z.l1, z.m1))
        aug_a = Mat.hstack(blk["A11"], blk["B11"])
        ok1 = (z.l1 < z.n1 + z.m1
               and blk["E11"].rank() == z.l1
               and blk["B11"].rank() == z.m1
               and full_rank_all_finite(pencil(aug_e, aug_a), z.l1, "row"))
        checks.append(("block1_controllable", ok1))

    checks.append(("block2_ode", blk["E22"].is_invertible()))

    aug_e3 = Mat.hstack(blk["E33"], Mat.zeros(z.l3, z.m3))
    aug_a3 = Mat.hstack(blk["A33"], sys.B.sub(r2, sys.l, b2, sys.m))
    checks.append(("block3_trivial",
                   full_rank_all_finite(pencil(aug_e3, aug_a3), z.n3 + z.m3, "column")))
    return FormReport(tuple(checks))


def decouple_qpff(sys: SystemTriple, sizes: QpffBlockSizes) -> tuple[SystemTriple, PTransform]:
    """Eliminate the off-diagonal blocks of a verified QPFF.

    Solves three coupled Sylvester-type systems for the correction blocks,
    then realizes them as a P-feedback witness with V = I.  The diagonal
    blocks of the output are bit-identical to the input's.
    """
    report = verify_qpff(sys, sizes)
    if not report.ok:
        raise ValueError(f"input is not in QPFF: {report.failures()}")
    z = sizes
    blk = _qpff_blocks(sys, z)
    e11, e22, e33 = blk["E11"], blk["E22"], blk["E33"]
    a11, a22, a33 = blk["A11"], blk["A22"], blk["A33"]
    b11, b13, b33 = blk["B11"], blk["B13"], blk["B33"]

    a1_ext = Mat.hstack(a11, -b11)
    e1_ext = Mat.hstack(e11, Mat.zeros(z.l1, z.m1))

    # first coupling: clear the (1,2) blocks
    sol_g = solve_two_equations(TwoEqInstance(
        A=a1_ext, B=e22, C=e1_ext, D=a22, E=blk["A12"], F=blk["E12"]))
    if sol_g is None:
        raise AssertionError("decoupling system for the (1,2) blocks is unsolvable")
    yg, g_s = sol_g
    g_t_x = yg.sub(0, z.n1, 0, z.n2)
    g_t_u = yg.sub(z.n1, z.n1 + z.m1, 0, z.n2)

    # second coupling: clear the (2,3) blocks; the relaxed input column of the
    # unknown is forced to zero by the invertibility of E22
    sol_f = solve_two_equations(TwoEqInstance(
        A=a22, B=Mat.hstack(e33, Mat.zeros(z.l3, z.m3)), C=e22,
        D=Mat.hstack(a33, -b33),
        E=Mat.hstack(blk["A23"], Mat.zeros(z.l2, z.m3)),
        F=Mat.hstack(blk["E23"], Mat.zeros(z.l2, z.m3))))
    if sol_f is None:
        raise AssertionError("decoupling system for the (2,3) blocks is unsolvable")
    yf, f_s = sol_f
    f_t_x = yf.sub(0, z.n2, 0, z.n3)
    if not yf.sub(0, z.n2, z.n3, z.n3 + z.m3).is_zero():
        raise AssertionError("relaxed input correction should vanish")

    # third coupling: clear the (1,3) blocks.  Split off the input rows of
    # [A33, -B33] by an invertible row operation, solve the constrained part
    # directly (H_S^u = B13) and the remaining pair as a coupled system.
    r_fill = complement(image_basis(b33), Subspace.full(z.l3), preferred=a33)
    r33 = Mat.hstack(r_fill, -b33)
    if not r33.is_invertible():
        raise AssertionError("row split of the trailing block failed")
    r33_inv = r33.inv()
    a33_split = r33_inv @ a33
    a33_x = a33_split.sub(0, z.l3 - z.m3, 0, z.n3)
    if not a33_split.sub(z.l3 - z.m3, z.l3, 0, z.n3).is_zero():
        raise AssertionError("A33 does not factor through the chosen row split")
    e33_split = r33_inv @ e33
    e33_x = e33_split.sub(0, z.l3 - z.m3, 0, z.n3)
    e33_u = e33_split.sub(z.l3 - z.m3, z.l3, 0, z.n3)
    h_s_u = b13
    a13_t = blk["A12"] @ f_t_x + blk["A13"]
    e13_t = blk["E12"] @ f_t_x + blk["E13"] + h_s_u @ e33_u
    sol_h = solve_two_equations(TwoEqInstance(
        A=a1_ext, B=e33_x, C=e1_ext, D=a33_x, E=a13_t, F=e13_t))
    if sol_h is None:
        raise AssertionError("decoupling system for the (1,3) blocks is unsolvable")
    yh, h_s_x = sol_h
    h_t_x = yh.sub(0, z.n1, 0, z.n3)
    h_t_u = yh.sub(z.n1, z.n1 + z.m1, 0, z.n3)
    h_s = Mat.hstack(h_s_x, h_s_u) @ r33_inv

    t_w = Mat.vstack(
        Mat.hstack(Mat.identity(z.n1), g_t_x, h_t_x),
        Mat.hstack(Mat.zeros(z.n2, z.n1), Mat.identity(z.n2), f_t_x),
        Mat.hstack(Mat.zeros(z.n3, z.n1), Mat.zeros(z.n3, z.n2), Mat.identity(z.n3)),
    )
    left = Mat.vstack(
        Mat.hstack(Mat.identity(z.l1), -g_s, -h_s),
        Mat.hstack(Mat.zeros(z.l2, z.l1), Mat.identity(z.l2), -f_s),
        Mat.hstack(Mat.zeros(z.l3, z.l1), Mat.zeros(z.l3, z.l2), Mat.identity(z.l3)),
    )
    f_hat = Mat.vstack(
        Mat.hstack(Mat.zeros(z.m1, z.n1), g_t_u, h_t_u),
        Mat.zeros(z.m2 + z.m3, sys.n),
    )
    witness = PTransform(left.inv(), t_w, Mat.identity(sys.m), -f_hat)
    out = apply_p_transform(sys, witness)

    zb = _qpff_blocks(out, z)
    offdiag_zero = all(zb[k].is_zero() for k in ("E12", "E13", "E23", "A12", "A13", "A23", "B13"))
    diag_kept = all(zb[k] == blk[k] for k in ("E11", "E22", "E33", "A11", "A22", "A33",
                                              "B11", "B33"))
    if not (offdiag_zero and diag_kept):
        raise AssertionError("decoupling did not produce the expected block pattern")
    return out, witness


def _unit_span(dim: int, idx) -> Subspace:
    cols = sorted(idx)
    ident = Mat.identity(dim)
    basis = (Mat.hstack(*[ident.col(j) for j in cols])
             if cols else Mat.zeros(dim, 0))
    return Subspace(dim, basis, canonical=True)


def decoupled_wong_pattern_ok(sys: SystemTriple, sizes: QpffBlockSizes) -> bool:
    """The coordinate-aligned Wong limit pattern of a decoupled QPFF.

    Checks V* n W* = Q^{n1} x 0, V* = Q^{n1+n2} x 0, and their images
    E(V* n W*) = Q^{l1} x 0 and E V* = Q^{l1+l2} x 0.
    """
    z = sizes
    rep = wong_limits(sys)
    vstar, wstar = rep.v_limit, rep.w_limit
    meet = vstar.intersect(wstar)
    return (meet == _unit_span(sys.n, range(z.n1))
            and vstar == _unit_span(sys.n, range(z.n1 + z.n2))
            and meet.image_under(sys.E) == _unit_span(sys.l, range(z.l1))
            and vstar.image_under(sys.E) == _unit_span(sys.l, range(z.l1 + z.l2)))


def constrained_input_dim(sys: SystemTriple, sizes: QpffBlockSizes) -> int:
    """dim(im B n ({0}^{l1+l2} x Q^{l3})) for a decoupled QPFF."""
    z = sizes
    bottom = _unit_span(sys.l, range(z.l1 + z.l2, sys.l))
    return image_basis(sys.B).intersect(bottom).dim


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

BLOCK_LABELS = (
    "completely controllable (input unconstrained and non-redundant)",
    "uncontrollable ODE",
    "trivial solution only (attached input forced to zero)",
)


@dataclass(frozen=True)
class ControllabilityReport:
    decomposition: QpffDecomposition
    m_kernel: int  # redundant input directions, dim ker B
    m_constrained: int

    @property
    def sizes(self) -> QpffBlockSizes:
        return self.decomposition.block_sizes

    def described_blocks(self) -> list[tuple[tuple[int, int, int], str]]:
        z = self.sizes
        return [((z.l1, z.n1, z.m1), BLOCK_LABELS[0]),
                ((z.l2, z.n2, 0), BLOCK_LABELS[1]),
                ((z.l3, z.n3, z.m3), BLOCK_LABELS[2])]


def classify_controllability(sys: SystemTriple) -> ControllabilityReport:
    """Run the QPFF construction and label its three diagonal blocks."""
    dec = compute_qpff(sys)
    return ControllabilityReport(
        decomposition=dec,
        m_kernel=kernel_basis(sys.B).dim,
        m_constrained=dec.block_sizes.m3,
    )
