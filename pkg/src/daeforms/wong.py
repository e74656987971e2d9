"""Augmented Wong sequences for descriptor control systems [E, A, B].

For a system E x' = A x + B u with E, A of shape l x n and B of shape l x m,
the two subspace iterations

    V^0 = Q^n,   V^{i+1} = A^{-1}(E V^i + im B)
    W^0 = {0},   W^{i+1} = E^{-1}(A W^i + im B)

are nested and stabilize after at most n steps.  Their limits V*, W* carry
the controllability structure of the system: V* is the (augmented)
consistency space and V* n W* the reachability space.  A^{-1}, E^{-1} denote
preimages of subspaces, not matrix inverses; E and A need not be square.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, Subspace, image_basis, kernel_basis, preimage


@dataclass(frozen=True)
class SystemTriple:
    """The structured pencil data [E, A, B] with shapes (l x n, l x n, l x m)."""

    E: Mat
    A: Mat
    B: Mat

    def __post_init__(self):
        if self.E.shape != self.A.shape:
            raise ValueError("E and A must have the same shape")
        if self.B.rows != self.E.rows:
            raise ValueError("B must have the same number of rows as E")

    @property
    def l(self) -> int:
        return self.E.rows

    @property
    def n(self) -> int:
        return self.E.cols

    @property
    def m(self) -> int:
        return self.B.cols

    def __repr__(self) -> str:
        return f"SystemTriple(l={self.l}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class WongReport:
    """Both chains together with their termination indices and limits."""

    v_chain: tuple[Subspace, ...]
    w_chain: tuple[Subspace, ...]

    @property
    def i_star(self) -> int:
        return len(self.v_chain) - 1

    @property
    def j_star(self) -> int:
        return len(self.w_chain) - 1

    @property
    def v_limit(self) -> Subspace:
        return self.v_chain[-1]

    @property
    def w_limit(self) -> Subspace:
        return self.w_chain[-1]


def _v_step(sys: SystemTriple, space: Subspace, im_b: Subspace) -> Subspace:
    return preimage(sys.A, space.image_under(sys.E).sum(im_b))


def _w_step(sys: SystemTriple, space: Subspace, im_b: Subspace) -> Subspace:
    return preimage(sys.E, space.image_under(sys.A).sum(im_b))


def _iterate(sys: SystemTriple, start: Subspace, step) -> list[Subspace]:
    im_b = image_basis(sys.B)
    chain = [start]
    for _ in range(sys.n + 1):
        nxt = step(sys, chain[-1], im_b)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
    raise AssertionError("Wong sequence failed to stabilize within n steps")


def v_sequence(sys: SystemTriple) -> list[Subspace]:
    """The decreasing chain V^0 > V^1 > ... up to and including the limit.

    The stabilized element appears exactly once, so the last list entry is V*
    and the termination index is len - 1.
    """
    return _iterate(sys, Subspace.full(sys.n), _v_step)


def w_sequence(sys: SystemTriple) -> list[Subspace]:
    """The increasing chain W^0 < W^1 < ... up to and including the limit."""
    return _iterate(sys, Subspace.zero(sys.n), _w_step)


def wong_limits(sys: SystemTriple) -> WongReport:
    """Both chains, with the fixpoint property of the limits re-checked."""
    v_chain = tuple(v_sequence(sys))
    w_chain = tuple(w_sequence(sys))
    report = WongReport(v_chain, w_chain)
    im_b = image_basis(sys.B)
    if _v_step(sys, report.v_limit, im_b) != report.v_limit:
        raise AssertionError("V* is not a fixpoint of its one-step map")
    if _w_step(sys, report.w_limit, im_b) != report.w_limit:
        raise AssertionError("W* is not a fixpoint of its one-step map")
    return report


@dataclass(frozen=True)
class LimitIdentityReport:
    """Exact evaluation of the five structural identities of the Wong limits.

    Every field must be True for every system; a False entry indicates an
    implementation bug, not a property of the input.
    """

    ew_in_aw_plus_b: bool
    av_in_ev_plus_b: bool
    e_meet_matches: bool
    a_meet_matches: bool
    sum_chain_matches: bool

    @property
    def ok(self) -> bool:
        return (self.ew_in_aw_plus_b and self.av_in_ev_plus_b and
                self.e_meet_matches and self.a_meet_matches and
                self.sum_chain_matches)


def check_limit_identities(sys: SystemTriple) -> LimitIdentityReport:
    """Evaluate both sides of the limit identities as canonical subspaces.

    Checked are the two flow inclusions E W* <= A W* + im B and
    A V* <= E V* + im B, the two intersection equalities
    E(V* n W*) = E V* n (A W* + im B) and A(V* n W*) = (E V* + im B) n A W*,
    and the three-way chain
    E(V* n W*) + im B = (E V* + im B) n (A W* + im B) = A(V* n W*) + im B.
    """
    rep = wong_limits(sys)
    vstar, wstar = rep.v_limit, rep.w_limit
    im_b = image_basis(sys.B)

    ev = vstar.image_under(sys.E)
    aw = wstar.image_under(sys.A)
    ew = wstar.image_under(sys.E)
    av = vstar.image_under(sys.A)
    meet = vstar.intersect(wstar)
    e_meet = meet.image_under(sys.E)
    a_meet = meet.image_under(sys.A)
    aw_b = aw.sum(im_b)
    ev_b = ev.sum(im_b)

    middle = ev_b.intersect(aw_b)
    return LimitIdentityReport(
        ew_in_aw_plus_b=aw_b.contains(ew),
        av_in_ev_plus_b=ev_b.contains(av),
        e_meet_matches=e_meet == ev.intersect(aw_b),
        a_meet_matches=a_meet == ev_b.intersect(aw),
        sum_chain_matches=(e_meet.sum(im_b) == middle and a_meet.sum(im_b) == middle),
    )


def augmented_system(sys: SystemTriple) -> SystemTriple:
    """The input-free pencil s[E, 0] - [A, B] viewed as a system in Q^(n+m)."""
    e_aug = Mat.hstack(sys.E, Mat.zeros(sys.l, sys.m))
    a_aug = Mat.hstack(sys.A, sys.B)
    return SystemTriple(e_aug, a_aug, Mat.zeros(sys.l, 0))


def augmented_projection_check(sys: SystemTriple) -> bool:
    """Whether projecting the augmented pencil's Wong limits recovers V*, W*.

    The limits of s[E, 0] - [A, B] live in Q^(n+m); chopping off the input
    coordinates with [I_n, 0] must give back the system's own limits.
    """
    own = wong_limits(sys)
    aug = wong_limits(augmented_system(sys))
    proj = Mat.hstack(Mat.identity(sys.n), Mat.zeros(sys.n, sys.m))
    return (aug.v_limit.image_under(proj) == own.v_limit and
            aug.w_limit.image_under(proj) == own.w_limit)


def kernel_in_w_limit(sys: SystemTriple) -> bool:
    """ker E is always absorbed by W*; exposed for property testing."""
    return wong_limits(sys).w_limit.contains(kernel_basis(sys.E))
