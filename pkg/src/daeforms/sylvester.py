"""Exact solvers for generalized Sylvester equations and coupled pairs.

Two problem shapes appear in the decoupling of quasi feedback forms:

* the generalized Sylvester equation  A X B - C X D = E, and
* the coupled pair  0 = E + A Y + Z D,  0 = F + C Y + Z B.

Both are solved by flattening into one linear system over Q and zeroing the
free variables, so solutions are deterministic and residuals are exactly
zero.  The coupled pair additionally admits a classical reduction to a
single generalized Sylvester equation once some real lambda makes
lambda*B - D left invertible; that reduction is exposed for cross-checking
the direct route, not as the primary solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Mat, Q, solve_right
from .pencils import Poly, minor_gcd, normal_rank, pencil


@dataclass(frozen=True)
class TwoEqInstance:
    """Data (A, B, C, D, E, F) of the pair 0 = E + A Y + Z D, 0 = F + C Y + Z B.

    Shapes: A, C are m x n; B, D are p x q; E, F are m x q.  The unknowns are
    Y (n x q) and Z (m x p).
    """

    A: Mat
    B: Mat
    C: Mat
    D: Mat
    E: Mat
    F: Mat

    def __post_init__(self):
        if self.A.shape != self.C.shape:
            raise ValueError("A and C must share a shape")
        if self.B.shape != self.D.shape:
            raise ValueError("B and D must share a shape")
        m, n = self.A.shape
        p, q = self.B.shape
        if self.E.shape != (m, q) or self.F.shape != (m, q):
            raise ValueError("E and F must be m x q")

    def residual(self, y: Mat, z: Mat) -> tuple[Mat, Mat]:
        return (self.E + self.A @ y + z @ self.D,
                self.F + self.C @ y + z @ self.B)


def solve_gen_sylvester(a: Mat, b: Mat, c: Mat, d: Mat, e: Mat) -> Mat | None:
    """Some X with a X b - c X d = e, or None when unsolvable.

    Flattened into one linear system in the n*p unknowns of X; free variables
    are zeroed for determinism.
    """
    if a.shape != c.shape or b.shape != d.shape:
        raise ValueError("coefficient pairs must share shapes")
    m, n = a.shape
    p, q = b.shape
    if e.shape != (m, q):
        raise ValueError("right-hand side must be m x q")
    nunk = n * p
    rows = []
    rhs = []
    for i in range(m):
        for j in range(q):
            coeff = [Q(0)] * nunk
            for k in range(n):
                aik, cik = a.data[i][k], c.data[i][k]
                if aik == 0 and cik == 0:
                    continue
                base = k * p
                for l in range(p):
                    coeff[base + l] += aik * b.data[l][j] - cik * d.data[l][j]
            rows.append(coeff)
            rhs.append([e.data[i][j]])
    system = Mat(m * q, nunk, rows)
    flat = solve_right(system, Mat(m * q, 1, rhs))
    if flat is None:
        return None
    return Mat(n, p, [[flat.data[k * p + l][0] for l in range(p)] for k in range(n)])


def solve_two_equations(inst: TwoEqInstance) -> tuple[Mat, Mat] | None:
    """Some (Y, Z) satisfying both equations exactly, or None.

    Direct joint flattening of both matrix equations into one linear system
    in the unknowns of Y and Z.
    """
    m, n = inst.A.shape
    p, q = inst.B.shape
    ny, nz = n * q, m * p
    rows = []
    rhs = []

    def emit(coefY: Mat, coefZ_right: Mat, const: Mat):
        # equations 0 = const + coefY . Y + Z . coefZ_right, entrywise
        for i in range(m):
            for j in range(q):
                coeff = [Q(0)] * (ny + nz)
                for k in range(n):
                    v = coefY.data[i][k]
                    if v != 0:
                        coeff[k * q + j] += v
                for l in range(p):
                    v = coefZ_right.data[l][j]
                    if v != 0:
                        coeff[ny + i * p + l] += v
                rows.append(coeff)
                rhs.append([-const.data[i][j]])

    emit(inst.A, inst.D, inst.E)
    emit(inst.C, inst.B, inst.F)
    system = Mat(2 * m * q, ny + nz, rows)
    flat = solve_right(system, Mat(2 * m * q, 1, rhs))
    if flat is None:
        return None
    y = Mat(n, q, [[flat.data[k * q + j][0] for j in range(q)] for k in range(n)])
    z = Mat(m, p, [[flat.data[ny + i * p + l][0] for l in range(p)] for i in range(m)])
    return y, z


def left_inverse(m: Mat) -> Mat:
    """The left inverse (M^T M)^-1 M^T of a full-column-rank matrix."""
    gram = m.T @ m
    if not gram.is_invertible():
        raise ValueError("matrix has no left inverse (column rank deficient)")
    return gram.inv() @ m.T


def right_inverse(m: Mat) -> Mat:
    """The right inverse M^T (M M^T)^-1 of a full-row-rank matrix."""
    gram = m @ m.T
    if not gram.is_invertible():
        raise ValueError("matrix has no right inverse (row rank deficient)")
    return m.T @ gram.inv()


def reduce_to_gen_sylvester(inst: TwoEqInstance, lam,
                            transposed: bool = False) -> tuple[Mat, Mat, Mat, Mat, Mat]:
    """The single generalized Sylvester instance whose solvability implies
    solvability of the coupled pair.

    Standard route (requires lam*B - D left invertible):
        A X B - C X D = -E + (lam*E - F) (lam*B - D)^+ D.
    Transposed route (requires lam*C - A right invertible):
        A X B - C X D = -F + C (lam*C - A)^+ (lam*F - E).

    Returns the tuple (A, B, C, D, rhs) ready for solve_gen_sylvester.
    """
    lam = Fraction(lam)
    if transposed:
        pinv = right_inverse(lam * inst.C - inst.A)
        rhs = -inst.F + inst.C @ pinv @ (lam * inst.F - inst.E)
    else:
        pinv = left_inverse(lam * inst.B - inst.D)
        rhs = -inst.E + (lam * inst.E - inst.F) @ pinv @ inst.D
    return inst.A, inst.B, inst.C, inst.D, rhs


def find_reduction_lambda(inst: TwoEqInstance, transposed: bool = False,
                          search_limit: int = 64) -> Fraction | None:
    """The first lambda in 0, 1, -1, 2, -2, ... making the reduction legal."""
    for k in range(search_limit + 1):
        for lam in ({0} if k == 0 else (k, -k)):
            lam = Fraction(lam)
            if transposed:
                cand = lam * inst.C - inst.A
                if cand.rank() == cand.rows:
                    return lam
            else:
                cand = lam * inst.B - inst.D
                if cand.rank() == cand.cols:
                    return lam
    return None


def gen_sylvester_always_solvable(a: Mat, b: Mat, c: Mat, d: Mat) -> bool:
    """Sufficient condition for A X B - C X D = E to be solvable for every E.

    Requires s*C - A to have full polynomial row rank, s*B - D to have full
    polynomial column rank, and the two pencils to never lose rank at a
    common point of C u {inf}; rank at infinity uses the convention
    rank(inf*M - N) = rank(M).  The orientation matters: without it the
    flattened operator need not be surjective even when both pencils have
    full normal rank and disjoint drop sets.
    """
    m = a.rows
    q = b.cols
    pc = pencil(c, a)
    pb = pencil(b, d)
    if normal_rank(pc) != m or normal_rank(pb) != q:
        return False
    g1 = minor_gcd(pc, m)
    g2 = minor_gcd(pb, q)
    common = Poly.gcd(g1, g2)
    if not (common.is_constant() and not common.is_zero()):
        return False
    drop_inf_c = c.rank() < m
    drop_inf_b = b.rank() < q
    return not (drop_inf_c and drop_inf_b)
