"""Proportional plus derivative feedback equivalence.

Adding derivative feedback u = F_P x + F_D x' + v to the P-feedback group
changes the transformation law to

    [E, A, B]  ->  [S(E T + B F_D), S(A T + B F_P), S B V]

and makes a strictly coarser classification possible: the quasi PD-feedback
form (QPDFF) separates the state into an underdetermined completely
controllable part, an uncontrollable ODE and a trivial-solution part, while
every effective input is shifted into a dedicated bottom block row where it
is constrained to zero.  The canonical PD-feedback form (PDFF) refines the
diagonal blocks into shift and nilpotent chains.

Chain orientation differs between the two template families on purpose: the
PDFF writes its underdetermined chains with the derivative on the leading
states and the free state last, which is what the golden transformation
data pins down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .linalg import Mat, Q, Subspace, complement, image_basis, kernel_basis, solve_right
from .pencils import full_rank_all_finite, pencil
from .sylvester import TwoEqInstance, solve_two_equations
from .wong import SystemTriple, wong_limits
from .pfeedback import (FormReport, PffData, head_sel, lower_shift,
                        tail_sel, verify_pff, _multi)


# --------------------------------------------------------------------------
# witnesses
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PDTransform:
    """A PD-equivalence witness (S, T, V, F_P, F_D)."""

    S: Mat
    T: Mat
    V: Mat
    F_P: Mat
    F_D: Mat

    def __post_init__(self):
        for name in ("S", "T", "V"):
            m = getattr(self, name)
            if not m.is_invertible():
                raise ValueError(f"witness matrix {name} must be square invertible")
        shape = (self.V.rows, self.T.rows)
        if self.F_P.shape != shape or self.F_D.shape != shape:
            raise ValueError("F_P and F_D must be m x n")

    @classmethod
    def identity(cls, l: int, n: int, m: int) -> "PDTransform":
        z = Mat.zeros(m, n)
        return cls(Mat.identity(l), Mat.identity(n), Mat.identity(m), z, z)


def apply_pd_transform(sys: SystemTriple, w: PDTransform) -> SystemTriple:
    """[S(E T + B F_D), S(A T + B F_P), S B V]."""
    if w.S.cols != sys.l or w.T.rows != sys.n or w.V.rows != sys.m:
        raise ValueError("witness dimensions do not fit the system")
    return SystemTriple(
        w.S @ (sys.E @ w.T + sys.B @ w.F_D),
        w.S @ (sys.A @ w.T + sys.B @ w.F_P),
        w.S @ sys.B @ w.V,
    )


def compose_pd(first: PDTransform, second: PDTransform) -> PDTransform:
    """The single witness equal to applying ``first`` and then ``second``."""
    return PDTransform(
        second.S @ first.S,
        first.T @ second.T,
        first.V @ second.V,
        first.F_P @ second.T + first.V @ second.F_P,
        first.F_D @ second.T + first.V @ second.F_D,
    )


def invert_pd(w: PDTransform) -> PDTransform:
    s_inv, t_inv, v_inv = w.S.inv(), w.T.inv(), w.V.inv()
    return PDTransform(s_inv, t_inv, v_inv,
                       -(v_inv @ w.F_P @ t_inv), -(v_inv @ w.F_D @ t_inv))


# --------------------------------------------------------------------------
# PD-feedback form template
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PdffData:
    """Template data (alpha, A_cbar, beta, gamma, r) of a PD-feedback form."""

    alpha: tuple[int, ...]
    a_cbar: Mat
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    r: int

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            idx = tuple(int(k) for k in getattr(self, name))
            object.__setattr__(self, name, idx)
            if any(k < 1 for k in idx):
                raise ValueError(f"multi-index {name} must contain positive integers")
        if self.a_cbar.rows != self.a_cbar.cols:
            raise ValueError("the uncontrollable block must be square")
        if self.r < 0:
            raise ValueError("rank of B cannot be negative")

    def dims(self, m: int | None = None) -> tuple[int, int, int]:
        a, b, g = self.alpha, self.beta, self.gamma
        ncbar = self.a_cbar.rows
        l = (sum(a) - len(a)) + ncbar + sum(b) + sum(g) + self.r
        n = sum(a) + ncbar + sum(b) + (sum(g) - len(g))
        if m is None:
            m = self.r
        if m < self.r:
            raise ValueError("input count is smaller than the rank of B")
        return l, n, m


def make_pdff_template(data: PdffData, m: int | None = None) -> SystemTriple:
    """The exact PD-feedback form template.

    Underdetermined alpha chains carry the derivative on the leading states
    (E block [I, 0], A block [0, I]); beta blocks are nilpotent chains
    N x' = x; gamma blocks are overdetermined chains; the bottom r rows pin
    the effective inputs to zero through an identity block in B.
    """
    l, n, m = data.dims(m)
    a, b, g = data.alpha, data.beta, data.gamma
    ncbar = data.a_cbar.rows
    e_top = Mat.block_diag(
        _multi([head_sel(ai) for ai in a]),
        Mat.identity(ncbar),
        _multi([lower_shift(bi) for bi in b]),
        _multi([tail_sel(gi).T for gi in g]),
    )
    a_top = Mat.block_diag(
        _multi([tail_sel(ai) for ai in a]),
        data.a_cbar,
        Mat.identity(sum(b)),
        _multi([head_sel(gi).T for gi in g]),
    )
    e = Mat.vstack(e_top, Mat.zeros(data.r, n))
    amat = Mat.vstack(a_top, Mat.zeros(data.r, n))
    bgrid = [[Q(0)] * m for _ in range(l)]
    for i in range(data.r):
        bgrid[l - data.r + i][m - data.r + i] = Q(1)
    return SystemTriple(e, amat, Mat(l, m, bgrid))


def verify_pdff(sys: SystemTriple, data: PdffData) -> bool:
    """Exact comparison of sys against the PDFF template for ``data``.

    Returns False immediately when the claimed r is not the rank of B.
    Raises ValueError when the template dimensions cannot match sys.
    """
    if data.r != sys.B.rank():
        return False
    l, n, _ = data.dims(sys.m)
    if (l, n) != (sys.l, sys.n):
        raise ValueError("template dimensions are inconsistent with the system")
    tpl = make_pdff_template(data, sys.m)
    return sys.E == tpl.E and sys.A == tpl.A and sys.B == tpl.B


# --------------------------------------------------------------------------
# quasi PD-feedback form
# --------------------------------------------------------------------------

class QpdffBlockSizes(NamedTuple):
    l1: int
    l2: int
    l3: int
    n1: int
    n2: int
    n3: int
    m1: int
    m2: int  # rank of B, also the height of the input block row

    def fits(self, sys: SystemTriple) -> bool:
        return (self.l1 + self.l2 + self.l3 + self.m2 == sys.l
                and self.n1 + self.n2 + self.n3 == sys.n
                and self.m1 + self.m2 == sys.m)


@dataclass(frozen=True)
class QpdffDecomposition:
    transformed: SystemTriple
    witness: PDTransform
    block_sizes: QpdffBlockSizes


def compute_qpdff(sys: SystemTriple, variant: int = 0) -> QpdffDecomposition:
    """Decompose sys into quasi PD-feedback form.

    The state bases are the same Wong-limit splittings as for the QPFF; on
    the equation side the image of B is split off first and placed last, so
    that the transformed B is supported on the bottom block row only.  F_D
    and F_P clear E and A there, and V sorts the inputs into (redundant,
    effective).
    """
    rep = wong_limits(sys)
    vstar, wstar = rep.v_limit, rep.w_limit
    meet = vstar.intersect(wstar)
    im_b = image_basis(sys.B)
    u_t = meet.basis
    r_t = complement(meet, vstar, variant=variant)
    o_t = complement(vstar, Subspace.full(sys.n), variant=variant)
    n1, n2, n3 = u_t.cols, r_t.cols, o_t.cols

    q_s = im_b.basis
    outer1 = meet.image_under(sys.E).sum(im_b)
    u_s = complement(im_b, outer1, variant=variant)
    outer2 = vstar.image_under(sys.E).sum(im_b)
    r_s = complement(outer1, outer2, variant=variant)
    o_s = complement(outer2, Subspace.full(sys.l), variant=variant)
    l1, l2, l3 = u_s.cols, r_s.cols, o_s.cols
    m2 = q_s.cols
    m1 = sys.m - m2

    t = Mat.hstack(u_t, r_t, o_t)
    s = Mat.hstack(u_s, r_s, o_s, q_s).inv()
    sb_bot = (s @ sys.B).sub(sys.l - m2, sys.l, 0, sys.m)
    f_d = solve_right(sb_bot, -(s @ sys.E @ t).sub(sys.l - m2, sys.l, 0, sys.n))
    f_p = solve_right(sb_bot, -(s @ sys.A @ t).sub(sys.l - m2, sys.l, 0, sys.n))
    if f_d is None or f_p is None:
        raise AssertionError("bottom-row clearing equations must be solvable")

    ker_b = kernel_basis(sys.B)
    v1 = ker_b.basis
    v2 = complement(ker_b, Subspace.full(sys.m), variant=variant)
    v = Mat.hstack(v1, v2)

    witness = PDTransform(s, t, v, f_p, f_d)
    transformed = apply_pd_transform(sys, witness)
    sizes = QpdffBlockSizes(l1, l2, l3, n1, n2, n3, m1, m2)
    report = verify_qpdff(transformed, sizes)
    if not report.ok:
        raise AssertionError(f"constructed QPDFF failed verification: {report.failures()}")
    return QpdffDecomposition(transformed, witness, sizes)


def _qpdff_blocks(sys: SystemTriple, z: QpdffBlockSizes):
    r1, r2, r3 = z.l1, z.l1 + z.l2, z.l1 + z.l2 + z.l3
    c1, c2 = z.n1, z.n1 + z.n2
    return {
        "E11": sys.E.sub(0, r1, 0, c1), "E22": sys.E.sub(r1, r2, c1, c2),
        "E33": sys.E.sub(r2, r3, c2, sys.n),
        "A11": sys.A.sub(0, r1, 0, c1), "A22": sys.A.sub(r1, r2, c1, c2),
        "A33": sys.A.sub(r2, r3, c2, sys.n),
        "E12": sys.E.sub(0, r1, c1, c2), "E13": sys.E.sub(0, r1, c2, sys.n),
        "E23": sys.E.sub(r1, r2, c2, sys.n),
        "A12": sys.A.sub(0, r1, c1, c2), "A13": sys.A.sub(0, r1, c2, sys.n),
        "A23": sys.A.sub(r1, r2, c2, sys.n),
        "Bhat": sys.B.sub(r3, sys.l, z.m1, sys.m),
    }


def verify_qpdff(sys: SystemTriple, sizes: QpdffBlockSizes) -> FormReport:
    """Check the QPDFF zero pattern and the four block conditions."""
    if not sizes.fits(sys):
        raise ValueError("block sizes do not sum to the system dimensions")
    z = sizes
    blk = _qpdff_blocks(sys, z)
    r1, r2, r3 = z.l1, z.l1 + z.l2, z.l1 + z.l2 + z.l3
    checks: list[tuple[str, bool]] = []

    pattern = True
    for mat in (sys.E, sys.A):
        pattern = (pattern
                   and mat.sub(r1, sys.l, 0, z.n1).is_zero()
                   and mat.sub(r2, sys.l, z.n1, z.n1 + z.n2).is_zero()
                   and mat.sub(r3, sys.l, 0, sys.n).is_zero())
    pattern = (pattern
               and sys.B.sub(0, r3, 0, sys.m).is_zero()
               and sys.B.sub(r3, sys.l, 0, z.m1).is_zero())
    checks.append(("zero_pattern", pattern))

    if (z.l1, z.n1) == (0, 0):
        checks.append(("block1_underdetermined", True))
    else:
        ok1 = (z.l1 < z.n1
               and blk["E11"].rank() == z.l1
               and full_rank_all_finite(pencil(blk["E11"], blk["A11"]), z.l1, "row"))
        checks.append(("block1_underdetermined", ok1))

    checks.append(("block2_ode", blk["E22"].is_invertible()))
    checks.append(("block3_trivial",
                   full_rank_all_finite(pencil(blk["E33"], blk["A33"]), z.n3, "column")))
    checks.append(("input_block_invertible",
                   blk["Bhat"].is_invertible() and sys.B.rank() == z.m2))
    return FormReport(tuple(checks))


def decouple_qpdff(sys: SystemTriple, sizes: QpdffBlockSizes) -> tuple[SystemTriple, PDTransform]:
    """Eliminate the off-diagonal blocks of a verified QPDFF.

    Input and state are already separated, so only three input-free coupled
    Sylvester systems have to be solved; the witness needs neither feedback
    nor an input transformation.
    """
    report = verify_qpdff(sys, sizes)
    if not report.ok:
        raise ValueError(f"input is not in QPDFF: {report.failures()}")
    z = sizes
    blk = _qpdff_blocks(sys, z)
    e11, e22, e33 = blk["E11"], blk["E22"], blk["E33"]
    a11, a22, a33 = blk["A11"], blk["A22"], blk["A33"]

    sol_g = solve_two_equations(TwoEqInstance(
        A=a11, B=e22, C=e11, D=a22, E=blk["A12"], F=blk["E12"]))
    if sol_g is None:
        raise AssertionError("decoupling system for the (1,2) blocks is unsolvable")
    g_t, g_s = sol_g

    sol_f = solve_two_equations(TwoEqInstance(
        A=a22, B=e33, C=e22, D=a33, E=blk["A23"], F=blk["E23"]))
    if sol_f is None:
        raise AssertionError("decoupling system for the (2,3) blocks is unsolvable")
    f_t, f_s = sol_f

    sol_h = solve_two_equations(TwoEqInstance(
        A=a11, B=e33, C=e11, D=a33,
        E=blk["A12"] @ f_t + blk["A13"], F=blk["E12"] @ f_t + blk["E13"]))
    if sol_h is None:
        raise AssertionError("decoupling system for the (1,3) blocks is unsolvable")
    h_t, h_s = sol_h

    t_w = Mat.vstack(
        Mat.hstack(Mat.identity(z.n1), g_t, h_t),
        Mat.hstack(Mat.zeros(z.n2, z.n1), Mat.identity(z.n2), f_t),
        Mat.hstack(Mat.zeros(z.n3, z.n1), Mat.zeros(z.n3, z.n2), Mat.identity(z.n3)),
    )
    left = Mat.block_diag(Mat.vstack(
        Mat.hstack(Mat.identity(z.l1), -g_s, -h_s),
        Mat.hstack(Mat.zeros(z.l2, z.l1), Mat.identity(z.l2), -f_s),
        Mat.hstack(Mat.zeros(z.l3, z.l1), Mat.zeros(z.l3, z.l2), Mat.identity(z.l3)),
    ), Mat.identity(z.m2))
    zmn = Mat.zeros(sys.m, sys.n)
    witness = PDTransform(left.inv(), t_w, Mat.identity(sys.m), zmn, zmn)
    out = apply_pd_transform(sys, witness)

    ob = _qpdff_blocks(out, z)
    offdiag_zero = all(ob[k].is_zero() for k in ("E12", "E13", "E23", "A12", "A13", "A23"))
    diag_kept = all(ob[k] == blk[k] for k in ("E11", "E22", "E33", "A11", "A22", "A33", "Bhat"))
    if not (offdiag_zero and diag_kept and out.B == sys.B):
        raise AssertionError("decoupling did not produce the expected block pattern")
    return out, witness


def _unit_span(dim: int, idx) -> Subspace:
    cols = sorted(idx)
    ident = Mat.identity(dim)
    basis = (Mat.hstack(*[ident.col(j) for j in cols])
             if cols else Mat.zeros(dim, 0))
    return Subspace(dim, basis, canonical=True)


def decoupled_wong_pattern_ok(sys: SystemTriple, sizes: QpdffBlockSizes) -> bool:
    """The coordinate-aligned Wong limit pattern of a decoupled QPDFF.

    Checks V* n W* = Q^{n1} x 0, V* = Q^{n1+n2} x 0, im B supported on the
    last m2 coordinates, the two image identities built from them, and the
    input-independence of the limits (the chains of [E, A, B] coincide with
    the chains of [E, A, 0]).
    """
    z = sizes
    rep = wong_limits(sys)
    vstar, wstar = rep.v_limit, rep.w_limit
    meet = vstar.intersect(wstar)
    n, l = sys.n, sys.l
    ok = (meet == _unit_span(n, range(z.n1))
          and vstar == _unit_span(n, range(z.n1 + z.n2)))
    im_b = image_basis(sys.B)
    ok = ok and im_b == _unit_span(l, range(l - z.m2, l))
    ok = ok and meet.image_under(sys.E).sum(im_b) == _unit_span(
        l, list(range(z.l1)) + list(range(l - z.m2, l)))
    ok = ok and vstar.image_under(sys.E).sum(im_b) == _unit_span(
        l, list(range(z.l1 + z.l2)) + list(range(l - z.m2, l)))
    inputless = SystemTriple(sys.E, sys.A, Mat.zeros(l, 0))
    rep0 = wong_limits(inputless)
    ok = ok and rep0.v_limit == vstar and rep0.w_limit == wstar
    return ok


# --------------------------------------------------------------------------
# rewriting a P-feedback form into a PD-feedback form
# --------------------------------------------------------------------------

def _perm_matrix(order) -> Mat:
    k = len(order)
    return Mat(k, k, [[1 if j == order[i] else 0 for j in range(k)] for i in range(k)])


def pff_to_pdff(sys: SystemTriple, data: PffData) -> tuple[SystemTriple, PDTransform, PdffData]:
    """Rewrite a system in P-feedback form into PD-feedback form.

    Derivative feedback turns every single-input chain (the beta blocks) and
    every driven overdetermined chain (the kappa blocks) into an input-free
    block plus one constrained input row; block permutations then sort the
    result into the PDFF layout.  The returned witness realizes the rewrite
    through apply_pd_transform, and the output verifies against the new
    template data.
    """
    if not verify_pff(sys, data):
        raise ValueError("input system is not in P-feedback form for the given data")
    a, b, g, d, k = data.alpha, data.beta, data.gamma, data.delta, data.kappa
    ncbar = data.a_cbar.rows
    l, n, m = sys.l, sys.n, sys.m
    n_beta, n_kappa = len(b), len(k)
    m_free = m - n_beta - n_kappa

    # row/column offsets of every block in the template layout
    def offsets(widths):
        out, acc = [], 0
        for w in widths:
            out.append(acc)
            acc += w
        return out, acc

    row_widths = ([ai - 1 for ai in a] + [bi for bi in b] + [ncbar]
                  + [gi for gi in g] + [di for di in d] + [ki for ki in k])
    col_widths = ([ai for ai in a] + [bi for bi in b] + [ncbar]
                  + [gi for gi in g] + [di - 1 for di in d] + [ki - 1 for ki in k])
    row_off, _ = offsets(row_widths)
    col_off, _ = offsets(col_widths)
    na = len(a)
    beta_rows = row_off[na:na + n_beta]
    beta_cols = col_off[na:na + n_beta]
    kappa_rows = row_off[na + n_beta + 1 + len(g) + len(d):]
    kappa_cols = col_off[na + n_beta + 1 + len(g) + len(d):]

    # derivative feedback replacing each chain-end input by its derivative
    fd = [[Q(0)] * n for _ in range(m)]
    for i, bi in enumerate(b):
        fd[i][beta_cols[i] + bi - 1] = Q(-1)
    for i, ki in enumerate(k):
        if ki >= 2:
            fd[m - n_kappa + i][kappa_cols[i] + ki - 2] = Q(-1)
    first = PDTransform(Mat.identity(l), Mat.identity(n), Mat.identity(m),
                        Mat.zeros(m, n), Mat(m, n, fd))

    # permutation into the PDFF layout: alpha and rewritten beta chains first,
    # then the ODE block, nilpotent chains from gamma and shortened kappa,
    # overdetermined delta chains, and all constrained input rows at the bottom.
    # Original alpha chains carry the derivative on the trailing states, so
    # their rows and states are reversed to match the PDFF orientation.
    row_order: list[int] = []
    for i, ai in enumerate(a):
        row_order.extend(reversed(range(row_off[i], row_off[i] + ai - 1)))
    for i, bi in enumerate(b):
        row_order.extend(range(beta_rows[i], beta_rows[i] + bi - 1))
    cbar_row = row_off[na + n_beta]
    row_order.extend(range(cbar_row, cbar_row + ncbar))
    for i, gi in enumerate(g):
        off = row_off[na + n_beta + 1 + i]
        row_order.extend(range(off, off + gi))
    for i, ki in enumerate(k):
        row_order.extend(range(kappa_rows[i], kappa_rows[i] + ki - 1))
    for i, di in enumerate(d):
        off = row_off[na + n_beta + 1 + len(g) + i]
        row_order.extend(range(off, off + di))
    for i, bi in enumerate(b):
        row_order.append(beta_rows[i] + bi - 1)
    for i, ki in enumerate(k):
        row_order.append(kappa_rows[i] + ki - 1)

    col_order: list[int] = []
    for i, ai in enumerate(a):
        col_order.extend(reversed(range(col_off[i], col_off[i] + ai)))
    for i, bi in enumerate(b):
        col_order.extend(range(beta_cols[i], beta_cols[i] + bi))
    cbar_col = col_off[na + n_beta]
    col_order.extend(range(cbar_col, cbar_col + ncbar))
    for i, gi in enumerate(g):
        off = col_off[na + n_beta + 1 + i]
        col_order.extend(range(off, off + gi))
    for i, ki in enumerate(k):
        col_order.extend(range(kappa_cols[i], kappa_cols[i] + ki - 1))
    for i, di in enumerate(d):
        off = col_off[na + n_beta + 1 + len(g) + i]
        col_order.extend(range(off, off + di - 1))

    input_order = (list(range(n_beta, n_beta + m_free))
                   + list(range(n_beta))
                   + list(range(m - n_kappa, m)))

    second = PDTransform(_perm_matrix(row_order), _perm_matrix(col_order).T,
                         _perm_matrix(input_order).T, Mat.zeros(m, n), Mat.zeros(m, n))
    witness = compose_pd(first, second)
    new_data = PdffData(
        alpha=a + b,
        a_cbar=data.a_cbar,
        beta=g + tuple(ki - 1 for ki in k if ki >= 2),
        gamma=d,
        r=n_beta + n_kappa,
    )
    out = apply_pd_transform(sys, witness)
    if not verify_pdff(out, new_data):
        raise AssertionError("rewritten system failed PDFF verification")
    return out, witness, new_data
