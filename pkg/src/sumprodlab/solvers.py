"""Exact combinatorial solvers: minimum additive basis and sumset decomposition.

Both searches are complete within their (finite) candidate spaces and
return deterministic witnesses.  They run in rational mode only: the
decomposition frontier argument orders elements, and prime fields have
no compatible total order.

Minimum basis.  Given a finite universe U, find a smallest B within U
with A contained in B + B.  The paper-agnostic counting floor
k(k+1)/2 >= |A| always applies; the search is branch and bound on the
most-constrained uncovered element, so the result is provably optimal
relative to U (a smaller basis outside U is never excluded).

Decomposition.  Decide whether A = B + C with |B|, |C| >= 2.  Translation
freedom is removed by fixing min(B) = 0, which forces C to be a subset
of A and B a subset of A - min(A).  The search branches on how the
smallest unexplained element is written as b + c, propagating the
constraint that every cross sum lands in A; exhausting the tree without
a witness is a proof of irreducibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import LKProfile, build_containment_graph, lk_profile
from .sets import ArithSet, difference_set, dilate, multiplicative_doubling, sumset


class InfeasibleWithinUniverse(RuntimeError):
    """No basis exists inside the given universe within the size cap.

    Says nothing about bases drawn from outside the universe.
    """


def counting_lower_bound(n: int) -> int:
    """Smallest k with k(k+1)/2 >= n."""
    k = (math.isqrt(8 * n + 1) - 1) // 2
    while k * (k + 1) // 2 < n:
        k += 1
    return k


def default_universe(a: ArithSet) -> ArithSet:
    """(A + A - A) together with all halved elements of A.

    A heuristic default containing every translate-and-halving candidate;
    optimality statements are always relative to the universe actually
    searched.
    """
    halves = ArithSet((x / 2 for x in a), p=a.p)
    combined = set(difference_set(sumset(a, a), a))
    combined.update(halves)
    return ArithSet(combined, p=a.p)


@dataclass(frozen=True)
class BasisSearchResult:
    basis: ArithSet
    size: int
    counting_bound: int
    nodes: int
    universe: ArithSet


def min_basis(
    a: ArithSet,
    universe: ArithSet | None = None,
    size_cap: int | None = None,
) -> BasisSearchResult:
    """Minimum-cardinality B within the universe with A ⊆ B + B."""
    if len(a) == 0:
        raise ValueError("A must be nonempty")
    if not a.is_rational:
        raise ValueError("basis search runs in rational mode only")
    u = universe if universe is not None else default_universe(a)
    if size_cap is None:
        size_cap = math.ceil(2 * math.sqrt(len(a))) + 4
    targets = list(a.elements)
    u_elems = list(u.elements)
    u_index = set(u_elems)

    pairs_for: dict = {}
    for t in targets:
        plist = []
        for x in u_elems:
            if x + x > t:
                break
            other = t - x
            if other in u_index:
                plist.append((x, other))
        if not plist:
            raise InfeasibleWithinUniverse(
                f"element {t} has no representation as a pair sum from the universe"
            )
        pairs_for[t] = plist

    floor = counting_lower_bound(len(targets))

    # Static per-element coverage cap, used for a set-cover style bound.
    max_cover = max(
        sum(1 for t in targets if (t - x) in u_index) for x in u_elems
    )

    def coverage_bound(chosen_size: int, uncovered: int) -> int:
        k = 0
        reachable = 0
        while reachable < uncovered:
            k += 1
            reachable = k * chosen_size + k * (k + 1) // 2
        return max(k, -(-uncovered // max_cover))

    def greedy() -> set:
        chosen: set = set()
        while True:
            uncovered = [
                t
                for t in targets
                if not any(x in chosen and y in chosen for x, y in pairs_for[t])
            ]
            if not uncovered:
                return chosen
            t = min(uncovered, key=lambda v: len(pairs_for[v]))
            best_pair = None
            best_gain = -1
            for x, y in pairs_for[t]:
                trial = chosen | {x, y}
                gain = sum(
                    1
                    for v in uncovered
                    if any(p in trial and q in trial for p, q in pairs_for[v])
                )
                gain = gain * 4 - len(trial - chosen)
                if gain > best_gain:
                    best_gain = gain
                    best_pair = (x, y)
            chosen.update(best_pair)

    incumbent = greedy()
    best_size = len(incumbent) if len(incumbent) <= size_cap else size_cap + 1
    best_set = set(incumbent) if len(incumbent) <= size_cap else None
    nodes = 0

    def dfs(chosen: set, covered: set) -> None:
        nonlocal best_size, best_set, nodes
        nodes += 1
        uncovered = [t for t in targets if t not in covered]
        if not uncovered:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_set = set(chosen)
            return
        bound = len(chosen) + max(
            coverage_bound(len(chosen), len(uncovered)),
            floor - len(chosen),
        )
        if bound >= best_size:
            return
        # Most-constrained uncovered element: fewest pairs still affordable.
        def viable(t):
            return [
                (x, y)
                for x, y in pairs_for[t]
                if len(chosen | {x, y}) < best_size
            ]

        target, options = None, None
        for t in uncovered:
            opts = viable(t)
            if target is None or len(opts) < len(options):
                target, options = t, opts
                if not options:
                    break
        if not options:
            return
        ranked = []
        for x, y in options:
            added = {x, y} - chosen
            trial = chosen | added
            newly = {
                t
                for t in uncovered
                if any(p in trial and q in trial for p, q in pairs_for[t])
            }
            ranked.append((len(added), -len(newly), (x, y), newly))
        ranked.sort(key=lambda item: (item[0], item[1], item[2]))
        for _, _, (x, y), newly in ranked:
            trial = chosen | {x, y}
            if len(trial) >= best_size:
                continue
            dfs(trial, covered | newly)

    dfs(set(), set())

    if best_set is None:
        raise InfeasibleWithinUniverse(
            f"no basis of size <= {size_cap} exists within the given universe"
        )
    basis = ArithSet(best_set, p=a.p)
    sums = sumset(basis, basis)
    missing = [t for t in targets if t not in sums]
    if missing:
        raise RuntimeError(f"search returned a non-basis; missing {missing}")
    return BasisSearchResult(
        basis=basis,
        size=len(basis),
        counting_bound=floor,
        nodes=nodes,
        universe=u,
    )


def lk_of_candidate(a: ArithSet, b: ArithSet) -> LKProfile:
    """Profile of a candidate basis against its target."""
    return lk_profile(build_containment_graph(b, a))


@dataclass(frozen=True)
class Decomposition:
    reducible: bool
    left: ArithSet | None
    right: ArithSet | None
    nodes: int

    def parts(self) -> tuple[ArithSet, ArithSet]:
        if not self.reducible:
            raise ValueError("no decomposition was found")
        return self.left, self.right


def decompose(a: ArithSet) -> Decomposition:
    """Complete backtracking search for A = B + C with |B|, |C| >= 2.

    Branches on the smallest unexplained element of A over all pair
    splits (new b + existing c, existing b + new c, and both new, in that
    order within equal coverage); every insertion checks all cross sums
    against A.  Branches that explain everything with a singleton side
    attempt a one-element extension of that side before being rejected.
    """
    if not a.is_rational:
        raise ValueError("decomposition search runs in rational mode only")
    if len(a) < 2:
        raise ValueError("need at least two elements")
    elems = list(a.elements)
    a_index = set(elems)
    c0 = elems[0]
    zero = Fraction(0)
    b_universe = [x - c0 for x in elems]  # candidates for B, ascending, 0 first

    b_set = {zero}
    c_set = {c0}
    explained: dict = {c0: 1}
    nodes = 0
    witness: list = []

    def add_b(beta) -> bool:
        for c in c_set:
            if (beta + c) not in a_index:
                return False
        b_set.add(beta)
        for c in c_set:
            s = beta + c
            explained[s] = explained.get(s, 0) + 1
        return True

    def remove_b(beta) -> None:
        b_set.discard(beta)
        for c in c_set:
            s = beta + c
            explained[s] -= 1

    def add_c(gamma) -> bool:
        for b in b_set:
            if (b + gamma) not in a_index:
                return False
        c_set.add(gamma)
        for b in b_set:
            s = b + gamma
            explained[s] = explained.get(s, 0) + 1
        return True

    def remove_c(gamma) -> None:
        c_set.discard(gamma)
        for b in b_set:
            s = b + gamma
            explained[s] -= 1

    def unexplained_min():
        for t in elems:
            if explained.get(t, 0) == 0:
                return t
        return None

    def coverage(new_b, new_c) -> int:
        seen = 0
        cs = list(c_set) + ([new_c] if new_c is not None else [])
        if new_b is not None:
            for c in cs:
                s = new_b + c
                if s in a_index and explained.get(s, 0) == 0:
                    seen += 1
        if new_c is not None:
            for b in b_set:
                s = b + new_c
                if s in a_index and explained.get(s, 0) == 0:
                    seen += 1
        return seen

    def try_leaf() -> bool:
        if len(b_set) >= 2 and len(c_set) >= 2:
            witness.append((set(b_set), set(c_set)))
            return True
        if len(b_set) < 2:
            for beta in b_universe:
                if beta in b_set or beta == zero:
                    continue
                if all((beta + c) in a_index for c in c_set):
                    witness.append((set(b_set) | {beta}, set(c_set)))
                    return True
            return False
        for gamma in elems:
            if gamma in c_set:
                continue
            if all((b + gamma) in a_index for b in b_set):
                witness.append((set(b_set), set(c_set) | {gamma}))
                return True
        return False

    def dfs() -> bool:
        nonlocal nodes
        nodes += 1
        target = unexplained_min()
        if target is None:
            return try_leaf()
        candidates = []
        for beta in b_universe:
            gamma = target - beta
            if gamma not in a_index:
                continue
            b_new = beta not in b_set
            c_new = gamma not in c_set
            if not b_new and not c_new:
                continue
            if b_new and any((beta + c) not in a_index for c in c_set):
                continue
            if c_new and any((b + gamma) not in a_index for b in b_set):
                continue
            kind = 0 if (b_new and not c_new) else (1 if (c_new and not b_new) else 2)
            gain = coverage(beta if b_new else None, gamma if c_new else None)
            candidates.append((-gain, kind, beta, gamma, b_new, c_new))
        candidates.sort()
        for _gain, _kind, beta, gamma, b_new, c_new in candidates:
            if b_new:
                if not add_b(beta):
                    continue
            if c_new:
                if not add_c(gamma):
                    if b_new:
                        remove_b(beta)
                    continue
            if dfs():
                return True
            if c_new:
                remove_c(gamma)
            if b_new:
                remove_b(beta)
        return False

    found = dfs()
    if not found:
        return Decomposition(reducible=False, left=None, right=None, nodes=nodes)
    b_out, c_out = witness[0]
    return Decomposition(
        reducible=True,
        left=ArithSet(b_out),
        right=ArithSet(c_out),
        nodes=nodes,
    )


def decomposition_report(a: ArithSet) -> dict:
    """Decomposition verdict with the shift-overlap context attached.

    For a witness, every translate B + c1 must sit inside
    A ∩ (A + (c1 - c2)); that containment is re-verified exactly.  The
    multiplicative doubling is reported either way (computed on the
    zero-free part when 0 is in A, and flagged).
    """
    from .energy import shift_intersection_report

    dec = decompose(a)
    zero_free = ArithSet([x for x in a if x], p=a.p)
    report: dict = {
        "size": len(a),
        "reducible": dec.reducible,
        "nodes": dec.nodes,
        "zero_dropped_for_doubling": len(zero_free) != len(a),
        "doubling": multiplicative_doubling(zero_free) if len(zero_free) else None,
    }
    if not dec.reducible:
        return report
    b, c = dec.parts()
    report["left_size"] = len(b)
    report["right_size"] = len(c)
    report["cube_root_of_size"] = len(a) ** (1.0 / 3.0)
    containment_ok = True
    shift_ok: bool | None = None
    for c1 in c:
        shifted = ArithSet((x + c1 for x in b), p=a.p)
        for c2 in c:
            if c1 == c2:
                continue
            delta = c1 - c2
            overlap = ArithSet(
                [x for x in a if (x - delta) in a], p=a.p
            )
            if any(el not in overlap for el in shifted):
                containment_ok = False
            if not a.contains_zero():
                rep = shift_intersection_report(a, delta)
                shift_ok = rep.holds if shift_ok is None else (shift_ok and rep.holds)
    report["containment_ok"] = containment_ok
    report["shift_bound_ok"] = shift_ok
    report["witness_left"] = b
    report["witness_right"] = c
    return report


def translation_normalized(a: ArithSet) -> ArithSet:
    """Shift so the minimum is 0 (handy when comparing decompositions)."""
    if not a.is_rational:
        raise ValueError("rational mode only")
    m = a.elements[0]
    return ArithSet((x - m for x in a))


def dilation_normalized(a: ArithSet) -> ArithSet:
    """Divide by the smallest positive element (no-op if none exists)."""
    positive = [x for x in a if x > 0]
    if not positive:
        return a
    return dilate(a, 1 / min(positive))
