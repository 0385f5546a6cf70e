"""Shortest symmetric-exchange sequences between compatible basis pairs of split matroids.

Pipeline: contract ``A1 & A2``, settle uniform components directly, grow a
strictly monotone exchange sequence (greedy steps plus two-step rewrites) to a
fixpoint, and if that does not reach the target, read the four blocking
hyperedges off the stuck pair and finish with a ``d + 1`` step schedule.

Sequences are ``(x, y)`` steps applied to an ordered pair ``(X1, X2)`` as
``X1 - x + y`` and ``X2 + x - y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .core import (
    BasisPairInstance,
    ExchangeStep,
    InfeasibleError,
    InputError,
    InternalError,
    apply_step,
    co_exchange_find,
    compatible,
    connected_components,
)
from .split import (
    SplitRepresentation,
    contract_representation,
    normalize_nonredundant,
    rep_rank,
    validate_representation,
)


@dataclass(frozen=True)
class MonotoneState:
    """A strictly monotone exchange prefix ``xs``/``ys`` from ``(A1, A2)`` toward ``(B1, B2)``."""

    rep: SplitRepresentation
    A1: frozenset
    A2: frozenset
    B1: frozenset
    B2: frozenset
    xs: tuple = ()
    ys: tuple = ()

    @property
    def s(self) -> int:
        return len(self.xs)

    @property
    def cur1(self) -> frozenset:
        return (self.A1 - set(self.xs)) | set(self.ys)

    @property
    def cur2(self) -> frozenset:
        return (self.A2 - set(self.ys)) | set(self.xs)

    @property
    def done(self) -> bool:
        return self.cur1 == self.B1

    def with_steps(self, xs, ys) -> "MonotoneState":
        return MonotoneState(self.rep, self.A1, self.A2, self.B1, self.B2, tuple(xs), tuple(ys))

    def steps(self) -> list[ExchangeStep]:
        return [ExchangeStep(x, y) for x, y in zip(self.xs, self.ys)]


def star_holds(state: MonotoneState, xs, ys, start: int = 0) -> bool:
    """Check the monotone-prefix condition for candidate sequences ``xs``, ``ys``.

    Positions before ``start`` are assumed already verified.
    """
    if len(xs) != len(ys) or len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        return False
    out1 = state.A1 & state.B2
    out2 = state.A2 & state.B1
    if not (set(xs) <= out1 and set(ys) <= out2):
        return False
    rep = state.rep
    X1 = (state.A1 - set(xs[:start])) | set(ys[:start])
    X2 = (state.A2 - set(ys[:start])) | set(xs[:start])
    for x, y in zip(xs[start:], ys[start:]):
        X1, X2 = apply_step(X1, X2, x, y)
        if not (rep.is_independent(X1) and rep.is_independent(X2)):
            return False
    return True


def _valid_exchange(rep: SplitRepresentation, X1, X2, x, y) -> bool:
    new1, new2 = apply_step(X1, X2, x, y)
    return rep.is_independent(new1) and rep.is_independent(new2)


def greedy_monotone(state: MonotoneState) -> MonotoneState:
    rep = state.rep
    xs, ys = list(state.xs), list(state.ys)
    X1, X2 = state.cur1, state.cur2
    while True:
        pick = None
        for x in sorted(X1 & state.B2):
            for y in sorted(X2 & state.B1):
                if _valid_exchange(rep, X1, X2, x, y):
                    pick = (x, y)
                    break
            if pick:
                break
        if pick is None:
            return state.with_steps(xs, ys)
        x, y = pick
        xs.append(x)
        ys.append(y)
        X1, X2 = apply_step(X1, X2, x, y)


def _templates(xs, ys, i, x, xp, y, yp):
    """The eight length-(s+2) rewrites of position ``i`` (Cases 1-4, two sub-cases each)."""
    xi, yi = xs[i], ys[i]

    def replace_x(p, q, u, v):
        return xs[:i] + (p,) + xs[i + 1:] + (q, xi), ys + (u, v)

    def replace_y(p, q, u, v):
        return xs + (p, q), ys[:i] + (u,) + ys[i + 1:] + (v, yi)

    return (
        replace_x(xp, x, y, yp),  # case 1, x_i in H2
        replace_x(x, xp, yp, y),  # case 1, x_i in H4
        replace_x(x, xp, y, yp),  # case 2, x_i not in H1
        replace_x(xp, x, yp, y),  # case 2, x_i in H1
        replace_y(xp, x, y, yp),  # case 3, y_i not in H2
        replace_y(x, xp, yp, y),  # case 3, y_i in H2
        replace_y(x, xp, y, yp),  # case 4, y_i in H1
        replace_y(xp, x, yp, y),  # case 4, y_i not in H1
    )


def extend_plus_two(state: MonotoneState) -> Optional[MonotoneState]:
    """Lengthen a greedy-maximal prefix by two via a rewrite, or return ``None`` if blocked."""
    if state.done:
        raise InputError("extend_plus_two needs an unfinished state")
    X = sorted(state.cur1 & state.B2)
    Y = sorted(state.cur2 & state.B1)
    xs, ys = state.xs, state.ys
    seen = set()
    for i in range(state.s):
        for x, xp in permutations(X, 2):
            for y, yp in permutations(Y, 2):
                for cand in _templates(xs, ys, i, x, xp, y, yp):
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if star_holds(state, cand[0], cand[1], start=i):
                        return state.with_steps(*cand)
    return None


def monotone_fixpoint(state: MonotoneState) -> MonotoneState:
    state = greedy_monotone(state)
    rounds = 0
    while not state.done:
        extended = extend_plus_two(state)
        if extended is None:
            break
        rounds += 1
        if rounds > state.rep.rank:
            raise InternalError("monotone extension did not terminate within r rounds")
        state = greedy_monotone(extended)
    return state


# --- blocking structure ---------------------------------------------------


@dataclass(frozen=True)
class Quadruple:
    """Four blocking hyperedge indices with the witnesses that produced them."""

    h: tuple
    x: int
    xp: int
    y: int
    yp: int


def _first_violated(rep: SplitRepresentation, X: frozenset) -> int:
    for i, c in enumerate(rep.constraints):
        if len(X & c.elements) > c.bound:
            return i
    raise InternalError(f"set {sorted(X)} of size r violates no hyperedge but is not a basis")


def _is_tight(rep, X, i) -> bool:
    c = rep.constraints[i]
    return len(X & c.elements) == c.bound


def _cell(H: tuple, i: int, j: int) -> frozenset:
    """Elements in hyperedges ``i`` and ``j`` (0-based) but in neither of the other two."""
    k, l = (m for m in range(4) if m not in (i, j))
    return (H[i] & H[j]) - (H[k] | H[l])


def find_blocking_quadruple(state: MonotoneState) -> Quadruple:
    rep = state.rep
    A1p, A2p, B1, B2 = state.cur1, state.cur2, state.B1, state.B2
    if state.done:
        raise InputError("state already reaches the target pair")
    for x in A1p & B2:
        for y in A2p & B1:
            if _valid_exchange(rep, A1p, A2p, x, y):
                raise InputError(f"a single exchange ({x}, {y}) is still available")
    M = rep.oracle
    x = min(A1p & B2)
    y = co_exchange_find(M, A2p, B2, x)
    h1 = _first_violated(rep, (A1p - {x}) | {y})
    xp = co_exchange_find(M, A1p, B1, y)
    h2 = _first_violated(rep, (A2p - {y}) | {xp})
    yp = co_exchange_find(M, A2p, B2, xp)
    h3 = _first_violated(rep, (A1p - {xp}) | {yp})
    h4 = _first_violated(rep, (A2p - {yp}) | {x})
    h = (h1, h2, h3, h4)

    if len(set(h)) != 4:
        raise InternalError(f"blocking hyperedges are not distinct: {h}")
    if not (_is_tight(rep, A1p, h1) and _is_tight(rep, A1p, h3)):
        raise InternalError("first member is not tight at H1 and H3")
    if not (_is_tight(rep, A2p, h2) and _is_tight(rep, A2p, h4)):
        raise InternalError("second member is not tight at H2 and H4")
    H = tuple(rep.constraints[i].elements for i in h)
    for elem, (i, j), label in ((x, (2, 3), "x"), (xp, (0, 1), "x'"), (y, (0, 3), "y"), (yp, (1, 2), "y'")):
        if elem not in _cell(H, i, j):
            raise InternalError(f"witness {label}={elem} is outside H_{{{i + 1},{j + 1}}}")
    return Quadruple(h, x, xp, y, yp)


# symmetry group of the blocking configuration: (side swap, H1<->H3, H2<->H4)
SYMMETRIES = tuple((side, s13, s24) for side in (False, True) for s13 in (False, True) for s24 in (False, True))


def _relabel(sym, S, T, K):
    """Apply a symmetry to the working problem ``S -> T`` with hyperedge labels ``K``.

    The single swaps H1<->H3 and H2<->H4 are reflections of the 4-cycle
    H1-H2-H3-H4 and only preserve the blocking structure together with time
    reversal (start and target exchanged); the side swap is a rotation.
    """
    side, s13, s24 = sym
    rev = False
    if s13:
        K = (K[2], K[1], K[0], K[3])
        S, T, rev = T, S, not rev
    if s24:
        K = (K[0], K[3], K[2], K[1])
        S, T, rev = T, S, not rev
    if side:
        S, T = (S[1], S[0]), (T[1], T[0])
        K = (K[3], K[0], K[1], K[2])
    return S, T, K, rev


@dataclass(frozen=True)
class BlockingCertificate:
    rep: SplitRepresentation
    hyperedges: tuple  # raw indices h1..h4
    sym: tuple  # (side, s13, s24)
    reversed: bool
    labels: tuple  # indices K1..K4 after the symmetry
    start: tuple  # working (S1, S2)
    target: tuple  # working (T1, T2)
    E: frozenset
    F: frozenset
    G: frozenset
    Hc: frozenset
    d: int
    z: int
    z_case: str
    membership: int
    monotone_steps: tuple = field(default=())

    def summary(self) -> dict:
        return {
            "hyperedges": list(self.hyperedges),
            "symmetry": {"side_swap": self.sym[0], "swap_h1_h3": self.sym[1], "swap_h2_h4": self.sym[2]},
            "time_reversed": self.reversed,
            "normalized_hyperedges": list(self.labels),
            "d": self.d,
            "E": sorted(self.E),
            "F": sorted(self.F),
            "G": sorted(self.G),
            "H": sorted(self.Hc),
            "pivot": self.z,
            "pivot_case": self.z_case,
            "pivot_membership": self.membership,
        }


def check_blocked_structure(state: MonotoneState, quad: Quadruple) -> int:
    """Assert the structural facts of a blocked state; return ``d``."""
    rep = state.rep
    A1p, A2p, B1, B2 = state.cur1, state.cur2, state.B1, state.B2
    H = tuple(rep.constraints[i].elements for i in quad.h)
    H12, H34, H14, H23 = _cell(H, 0, 1), _cell(H, 2, 3), _cell(H, 0, 3), _cell(H, 1, 2)
    if not (A1p & B2 <= H12 | H34 and A2p & B1 <= H14 | H23):
        raise InternalError("stuck elements escape the four blocking cells")
    sym13, sym24 = H[0] ^ H[2], H[1] ^ H[3]
    for x, y in zip(state.xs, state.ys):
        if not ({x, y} <= sym13 & sym24):
            raise InternalError(f"monotone pair ({x}, {y}) is not in (H1^H3) & (H2^H4)")
        if [x in Hk for Hk in H] != [y in Hk for Hk in H]:
            raise InternalError(f"monotone pair ({x}, {y}) has differing hyperedge membership")
    d = len(A1p - B1)
    if d <= 0 or d % 2:
        raise InternalError(f"blocked state with d = {d}; d must be even and positive")
    for cur, tgt in ((A1p, B1), (A2p, B2)):
        for Hk in H:
            if len((cur - tgt) & Hk) != d // 2:
                raise InternalError("class sizes differ from d/2")
    h1, h2, h3, h4 = quad.h
    for X, pair in ((state.A1, (h1, h3)), (B1, (h1, h3)), (state.A2, (h2, h4)), (B2, (h2, h4))):
        if not all(_is_tight(rep, X, i) for i in pair):
            raise InternalError("original or target pair is not tight at the blocking hyperedges")
    if d > 2 * len(state.A1 & B1):
        raise InternalError(f"d = {d} exceeds 2|A1 & B1| = {2 * len(state.A1 & B1)}")
    both = (A1p & B1) | (A2p & B2)
    if both <= sym13 or both <= sym24:
        raise InternalError("no element outside H1^H3 (or H2^H4) among the settled elements")
    return d


def build_certificate(state: MonotoneState, quad: Quadruple) -> BlockingCertificate:
    rep = state.rep
    d = check_blocked_structure(state, quad)
    raw_S, raw_T = (state.cur1, state.cur2), (state.B1, state.B2)
    H_of = {i: rep.constraints[i].elements for i in quad.h}
    fallback = None
    for sym in SYMMETRIES:
        S, T, K, rev = _relabel(sym, raw_S, raw_T, quad.h)
        H = tuple(H_of[i] for i in K)
        E, G = S[0] & T[1] & _cell(H, 0, 1), S[0] & T[1] & _cell(H, 2, 3)
        F, Hc = S[1] & T[0] & _cell(H, 0, 3), S[1] & T[0] & _cell(H, 1, 2)
        if not (_is_tight(rep, S[0], K[0]) and _is_tight(rep, S[0], K[2])
                and _is_tight(rep, S[1], K[1]) and _is_tight(rep, S[1], K[3])):
            raise InternalError(f"symmetry {sym} breaks tightness of the blocking configuration")
        if not all(len(C) == d // 2 for C in (E, F, G, Hc)):
            raise InternalError(f"symmetry {sym} gives class sizes {[len(C) for C in (E, F, G, Hc)]}, not d/2")
        for z in sorted(S[0] & T[0]):
            inside = [z in Hk for Hk in H]
            if inside == [True, False, False, False]:
                case = "Z1"
            elif inside[0] and inside[2] and not inside[1]:
                case = "Z2"
            else:
                continue
            cert = BlockingCertificate(
                rep, quad.h, sym, rev, K, S, T, E, F, G, Hc, d, z, case, sum(inside), tuple(state.steps())
            )
            if cert.membership % 2 == 1:
                return cert
            if fallback is None:
                fallback = cert
    if fallback is not None:
        return fallback
    raise InternalError("no pivot element found under any symmetry")


def final_schedule(cert: BlockingCertificate) -> list[ExchangeStep]:
    """The ``d + 1`` closing exchanges, mapped back to the raw orientation."""
    rep = cert.rep
    half = cert.d // 2
    e, f, g, h = (sorted(C) for C in (cert.E, cert.F, cert.G, cert.Hc))
    if not all(len(C) == half for C in (e, f, g, h)) or half == 0:
        raise InternalError("certificate classes do not have size d/2")
    z = cert.z
    if cert.z_case == "Z1":
        first, second = g, e  # (g_i, h_i) then (e_i, f_{i+1})
    elif cert.z_case == "Z2":
        first, second = e, g  # (e_i, h_i) then (g_i, f_{i+1})
    else:
        raise InternalError(f"unknown pivot case {cert.z_case!r}")
    work = [(z, f[0])]
    for i in range(half):
        work.append((first[i], h[i]))
        if i + 1 < half:
            work.append((second[i], f[i + 1]))
    work.append((second[half - 1], z))

    K = cert.labels
    X1, X2 = cert.start
    for n, (x, y) in enumerate(work, start=1):
        if x not in X1 - X2 or y not in X2 - X1:
            raise InternalError(f"closing step {n} ({x}, {y}) is not an exchange of the current pair")
        X1, X2 = apply_step(X1, X2, x, y)
        if not (rep.is_basis(X1) and rep.is_basis(X2)):
            raise InternalError(f"closing step {n} ({x}, {y}) leaves a non-basis")
        if cert.z_case == "Z1":
            want = ((K[0],), (K[1],) if n % 2 else (K[3],))
        else:
            want = ((K[0],) if n % 2 else (K[2],), (K[1],))
        if not (all(_is_tight(rep, X1, i) for i in want[0]) and all(_is_tight(rep, X2, i) for i in want[1])):
            raise InternalError(f"closing step {n} breaks the expected tightness pattern")
    if (X1, X2) != tuple(cert.target):
        raise InternalError("closing schedule does not end at the target pair")

    if cert.sym[0]:
        work = [(y, x) for x, y in work]
    if cert.reversed:
        work = [(y, x) for x, y in reversed(work)]
    return [ExchangeStep(x, y) for x, y in work]


# --- top level --------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    distance: int
    lower_bound: int
    sequence: tuple
    monotone_length: int
    certificate: Optional[BlockingCertificate] = None

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.x, s.y) for s in self.sequence]


@lru_cache(maxsize=4096)
def _components(rep: SplitRepresentation) -> tuple:
    return tuple(connected_components(rep.oracle))


def is_uniform_component(rep: SplitRepresentation, C: frozenset) -> bool:
    """True iff every constraint is redundant on the restriction to ``C``."""
    rC = rep_rank(rep, C)
    return all(c.bound >= rC or len(c.elements & C) <= c.bound for c in rep.constraints)


def _prepare(rep: SplitRepresentation, P: BasisPairInstance):
    problems = validate_representation(rep)
    if problems:
        raise InputError("invalid representation: " + "; ".join(problems))
    rep = normalize_nonredundant(rep)
    for label, X in zip(("A1", "A2", "B1", "B2"), P.sets()):
        X = rep.check(X)
        if not rep.is_basis(X):
            raise InputError(f"{label} = {sorted(X)} is not a basis")
    if not compatible(P):
        raise InfeasibleError("basis pairs are not compatible; no exchange sequence exists")
    T = P.A1 & P.A2
    crep = contract_representation(rep, T)
    a1, a2, b1, b2 = (X - T for X in P.sets())

    xs, ys = [], []
    for C in _components(crep):
        if not is_uniform_component(crep, C):
            continue
        for x, y in zip(sorted(a1 & b2 & C), sorted(a2 & b1 & C)):
            xs.append(x)
            ys.append(y)
    state = MonotoneState(crep, a1, a2, b1, b2)
    if not star_holds(state, xs, ys):
        raise InternalError("direct exchanges inside a uniform component failed")
    return rep, crep, state.with_steps(xs, ys)


def longest_monotone(rep: SplitRepresentation, P: BasisPairInstance) -> list[ExchangeStep]:
    _, _, state = _prepare(rep, P)
    return monotone_fixpoint(state).steps()


def solve(rep: SplitRepresentation, P: BasisPairInstance) -> SolveResult:
    nrep, crep, state = _prepare(rep, P)
    lower = nrep.rank - len(P.A1 & P.B1)
    state = monotone_fixpoint(state)
    seq = state.steps()
    cert = None
    if not state.done:
        quad = find_blocking_quadruple(state)
        cert = build_certificate(state, quad)
        tail = final_schedule(cert)
        if len(tail) != cert.d + 1:
            raise InternalError("closing schedule length differs from d + 1")
        seq = seq + tail
    distance = len(seq)
    if distance != (lower if cert is None else lower + 1):
        raise InternalError(f"sequence length {distance} inconsistent with lower bound {lower}")

    X1, X2 = P.A1, P.A2
    for st in seq:
        if st.x not in X1 - X2 or st.y not in X2 - X1:
            raise InternalError(f"step ({st.x}, {st.y}) is not a symmetric exchange")
        X1, X2 = apply_step(X1, X2, st.x, st.y)
        if not (nrep.is_basis(X1) and nrep.is_basis(X2)):
            raise InternalError(f"step ({st.x}, {st.y}) leaves a non-basis")
    if (X1, X2) != (P.B1, P.B2):
        raise InternalError("sequence does not reach the target pair")
    return SolveResult(distance, lower, tuple(seq), state.s, cert)


MONOTONE_BOUNDS = {
    "split": lambda r, k: r - 3 * k,
    "base_orderable_split": lambda r, k: r - 2 * k,
    "paving": lambda r, k: r - k - 2,
}


def monotone_bound(rep: SplitRepresentation, P: BasisPairInstance, class_tag: str) -> int:
    if class_tag not in MONOTONE_BOUNDS:
        raise InputError(f"unknown class tag {class_tag!r}; expected one of {sorted(MONOTONE_BOUNDS)}")
    if class_tag == "paving" and any(c.bound != rep.rank - 1 for c in rep.constraints):
        raise InputError("paving tag needs every hyperedge bound to equal r - 1")
    return MONOTONE_BOUNDS[class_tag](rep.rank, len(P.A1 & P.B1))


def monotone_bound_check(rep: SplitRepresentation, P: BasisPairInstance, class_tag: str) -> bool:
    bound = monotone_bound(rep, P, class_tag)
    return len(longest_monotone(rep, P)) >= bound
