"""Elementary reduction: the flag X^0 > X^1 > ... > X^eps and the extension containment checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .charvar import DEFAULT_MAX_MINORS, DEFAULT_ROUNDS, CharData, formal_char_ideal, variety_span
from .errors import FlagFailure, NonmonotoneFlag, Unstable
from .exactalg import Mat, Subspace
from .multipoly import Ideal, radical_membership
from .spencer import delta_x_kernel, e_prolongations, prolong_space, restricted_prolongation
from .tableau import Tableau, from_generators, input_cauchy_space, restrict, rng_for

TERMINAL_REASONS = ("span-full-frobenius", "tableau-zero", "stabilized")


@dataclass(frozen=True)
class ReductionStep:
    level: int
    x_k: Subspace  # in the original V
    tableau_k: Tableau  # restriction of the original tableau to x_k
    chardata_k: CharData


@dataclass(frozen=True)
class ReductionFlag:
    steps: tuple
    depth: int
    terminal_reason: str

    @property
    def dims(self) -> tuple:
        return tuple(s.x_k.dim for s in self.steps)

    @property
    def terminal(self) -> Subspace:
        return self.steps[-1].x_k


def _stage_seed(seed, level: int) -> str:
    return f"{seed}/stage{level}"


def empty_tableau(r: int) -> Tableau:
    return from_generators(0, r, [])


def elem_step(t: Tableau, seed=0, rounds: int = DEFAULT_ROUNDS,
              max_minors: int = DEFAULT_MAX_MINORS) -> tuple[Subspace, Tableau]:
    """X^1 (adapted coordinates of t) and the restriction of t to it."""
    x1, reduced, _ = _step(t, seed, rounds, max_minors)
    return x1, reduced


def _step(t: Tableau, seed, rounds: int, max_minors: int) -> tuple[Subspace, Tableau, CharData]:
    cd = variety_span(t, seed=seed, rounds=rounds, max_minors=max_minors)
    x1 = cd.x_one
    if x1.is_zero():
        return x1, empty_tableau(t.r), cd
    fresh = rng_for(seed, "regenericize").randrange(2**32)
    return x1, restrict(t, x1, seed=fresh), cd


def elem_flag(t: Tableau, seed=0, rounds: int = DEFAULT_ROUNDS,
              max_minors: int = DEFAULT_MAX_MINORS) -> ReductionFlag:
    """Iterate elem_step until the restricted tableau is zero or X^k reaches 0.

    Each x_k is carried in the original input coordinates through the composed inclusions.
    """
    n = t.n
    steps: list[ReductionStep] = []
    cur = t
    embed = Mat.identity(n)  # columns: cur's input basis in original coordinates
    x_k = Subspace.full(n)
    reason = None
    level = 0
    while True:
        if level > n:
            raise FlagFailure(f"depth exceeded n = {n}", tuple(steps), None)
        try:
            x1_ad, reduced, cd = _step(cur, _stage_seed(seed, level), rounds, max_minors)
        except Unstable as exc:
            raise FlagFailure(f"variety span unstable at level {level}", tuple(steps), exc) from exc
        steps.append(ReductionStep(level, x_k, cur, cd))
        if cur.is_zero():
            reason = "tableau-zero"
            break
        if x1_ad.is_zero():
            steps.append(ReductionStep(level + 1, Subspace.zero(n), reduced,
                                       variety_span(reduced, seed=_stage_seed(seed, level + 1))))
            reason = "span-full-frobenius"
            break
        # x1 in cur's input coordinates, then in the original V
        x1_in = cur.subspace_to_input(x1_ad)
        x_next = x1_in.image(embed)
        if not x_next.issubspace(x_k):
            raise NonmonotoneFlag(f"X^{level + 1} is not inside X^{level}", tuple(steps))
        if x_next == x_k:
            reason = "stabilized"
            break
        embed = embed @ cur.basis_change[0] @ Mat.from_columns(list(x1_ad.vectors), cur.n)
        cur = reduced
        x_k = x_next
        level += 1
    depth = len(steps) - 1
    flag = ReductionFlag(tuple(steps), depth, reason)
    if depth > n:
        raise FlagFailure(f"depth {depth} exceeds n = {n}", flag.steps, None)
    S = input_cauchy_space(t)
    if flag.terminal != S:
        raise FlagFailure(
            f"terminal space of dim {flag.terminal.dim} differs from the Cauchy space of dim {S.dim}",
            flag.steps, None)
    return flag


# ---------------------------------------------------------------- extension containments


def check_dxe(t: Tableau, rho_max: int = 1, x: Subspace | None = None, seed=0) -> bool:
    """A^(rho+1)|_X in E^(rho) in ker delta_X for rho = 0..rho_max; x defaults to X^1."""
    if x is None:
        x = variety_span(t, seed=seed).x_one
    if x.is_zero():
        return True
    E = e_prolongations(t, x, rho_max)
    for rho in range(rho_max + 1):
        if not restricted_prolongation(t, rho, x).issubspace(E[rho]):
            return False
        if not E[rho].issubspace(delta_x_kernel(t, x, rho)):
            return False
    return True


def _restrict_a_slot(space: Subspace, r: int, n: int, x: Subspace, tail: int) -> Subspace:
    """Image of a subspace of W (x) V* (x) Q^tail under restricting the V*-slot to X."""
    xs = [list(v) for v in x.vectors]
    m = x.dim
    out = []
    for e in space.vectors:
        v = [0] * (r * m * tail)
        for a in range(r):
            for beta in range(m):
                for j in range(tail):
                    v[(a * m + beta) * tail + j] = sum(
                        xs[beta][k] * e[(a * n + k) * tail + j] for k in range(n) if xs[beta][k])
        out.append(v)
    return Subspace(out, r * m * tail)


def _contains(small: Ideal, big: Ideal) -> bool:
    """V(small) inside V(big): every generator of big lies in the radical of small."""
    return all(radical_membership(g, small) for g in big.generators)


@dataclass(frozen=True)
class ElemCharReport:
    """Characteristic ideals in X^1 coordinates and the verdict of each containment."""
    x: Subspace
    ideals: dict = field(compare=False)
    literal: dict
    repaired: dict

    @property
    def literal_holds(self) -> bool:
        return all(self.literal.values())

    @property
    def repaired_holds(self) -> bool:
        return all(self.repaired.values())


def elemchar_report(t: Tableau, seed=0, x: Subspace | None = None,
                    max_minors: int = DEFAULT_MAX_MINORS) -> ElemCharReport:
    """Xi_E^(1) in Xi_E in dXi^(1) in dXi, under two readings of the rank-one condition.

    literal: xi is characteristic for E when some nonzero pi in A has pi (x) xi in ker delta_X.
    repaired: the same with pi|_X nonzero, i.e. the characteristic variety of E's image in
    A|_X (x) X*.  They differ exactly when restriction to X has a kernel on A.
    """
    if x is None:
        x = variety_span(t, seed=seed).x_one
    if x.is_zero():
        # P(X*) is empty: every containment is vacuous
        ok = {"E1<=E": True, "E<=dot1": True, "dot1<=dot": True}
        return ElemCharReport(x, {}, dict(ok), dict(ok))
    r, n, m = t.r, t.n, x.dim
    dot = restrict(t, x).input_subspace()  # W (x) X*, coordinates a*m + beta
    dot1 = prolong_space(dot, r, m)  # (W (x) X*) (x) X*
    E0, E1 = e_prolongations(t, x, 1)  # (W (x) V*) (x) X* and (W (x) V* (x) X*) (x) X*
    ideals = {
        "dot": formal_char_ideal(dot, r, m, max_minors),
        "dot1": formal_char_ideal(dot1, r * m, m, max_minors),
        "E": formal_char_ideal(E0, r * n, m, max_minors),
        "E1": formal_char_ideal(E1, r * n * m, m, max_minors),
        "E_rep": formal_char_ideal(_restrict_a_slot(E0, r, n, x, m), r * m, m, max_minors),
        "E1_rep": formal_char_ideal(_restrict_a_slot(E1, r, n, x, m * m), r * m * m, m, max_minors),
    }
    i = ideals
    # the literal dXi^(1) is "exists pi in A with delta_X(pi (x) xi) = 0", which is Xi_E
    literal = {
        "E1<=E": _contains(i["E1"], i["E"]),
        "E<=dot1": _contains(i["E"], i["E"]),
        "dot1<=dot": _contains(i["E"], i["dot"]),
    }
    repaired = {
        "E1<=E": _contains(i["E1_rep"], i["E_rep"]),
        "E<=dot1": _contains(i["E_rep"], i["dot1"]),
        "dot1<=dot": _contains(i["dot1"], i["dot"]),
    }
    return ElemCharReport(x, ideals, literal, repaired)


def check_elemchar(t: Tableau, seed=0, x: Subspace | None = None, literal: bool = False) -> bool:
    """Containment chain of characteristic varieties for the elementary extension.

    The repaired reading (default) requires pi|_X != 0; see elemchar_report.
    """
    rep = elemchar_report(t, seed=seed, x=x)
    return rep.literal_holds if literal else rep.repaired_holds
