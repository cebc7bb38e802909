"""Schur-ring partitions of a finite group and their closure machinery.

An S-ring over G is given by a partition of G such that {e} is a class,
the inverse of every class is a class, and for every pair of classes X, Y
the convolution product of their class sums has a constant coefficient on
each class.

wl_closure computes the coarsest such partition in which the given marked
sets are unions of classes, by refinement from an initial partition.  Call
a partition admissible if it satisfies the axioms and has the marked sets
as unions of classes.  The refinement maintains, for every admissible Q,
the invariant that each current class is a union of classes of Q: the
initial classes are intersections of the marked sets, their inverses,
their complements and {e}, all unions of Q-classes; splitting along the
map x -> class(x^-1) intersects classes with inverses of unions of
Q-classes; and splitting along a coefficient fiber of a product of two
class sums intersects them with a fiber that is a union of Q-classes by
the Schur-Wielandt principle.  Each split is therefore forced, every
admissible partition refines the fixed point, and since the fixed point
itself is admissible it is the unique coarsest one.  The 2-WL pair
refinement in the wl module computes the same rank by an unrelated
algorithm and serves as a cross-oracle in the test suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .group import Group, Section, Subgroup, is_normal, make_section, subgroup_generated
from .groupring import connection_set


class SRingPartition:
    """Partition of a group, candidate or verified S-ring.

    Classes are sorted element tuples in canonical order (size, then
    minimal element); class_of maps an element index to its class id.
    """

    def __init__(self, group: Group, classes: Iterable[Iterable[int]]):
        self.group = group
        canon = sorted(
            (tuple(sorted(set(int(x) for x in cls))) for cls in classes),
            key=lambda t: (len(t), t),
        )
        self.classes: tuple[tuple[int, ...], ...] = tuple(canon)
        self.class_of = [-1] * group.order
        for cid, cls in enumerate(self.classes):
            for x in cls:
                if not 0 <= x < group.order:
                    raise ValueError(f"element {x} out of range")
                if self.class_of[x] != -1:
                    raise ValueError(f"element {group.name(x)} appears in two classes")
                self.class_of[x] = cid
        if any(c == -1 for c in self.class_of):
            missing = next(x for x in group.elements() if self.class_of[x] == -1)
            raise ValueError(f"element {group.name(missing)} not covered")

    @property
    def rank(self) -> int:
        return len(self.classes)

    def class_containing(self, x: int) -> tuple[int, ...]:
        return self.classes[self.class_of[x]]

    def is_union_of_classes(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(set(self.classes[self.class_of[x]]) <= s for x in s)

    def refines(self, other: "SRingPartition") -> bool:
        """True iff every class of self lies inside a class of other."""
        if self.group is not other.group:
            raise ValueError("partitions live over different groups")
        return all(
            len({other.class_of[x] for x in cls}) == 1 for cls in self.classes
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SRingPartition):
            return NotImplemented
        return self.group is other.group and self.classes == other.classes

    def __repr__(self) -> str:
        return f"SRingPartition(rank={self.rank}, |G|={self.group.order})"


def rank(p: SRingPartition) -> int:
    return p.rank


@dataclass(frozen=True)
class SRingViolation:
    axiom: int
    detail: str


@dataclass
class SRingCheck:
    ok: bool
    violations: list[SRingViolation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_sring(p: SRingPartition) -> SRingCheck:
    """Validate the three S-ring axioms on a candidate partition.

    Axiom 3 is checked in Schur-Wielandt form: the convolution of every
    ordered pair of class sums must be constant on each class.
    """
    g = p.group
    violations: list[SRingViolation] = []

    if p.class_containing(g.identity) != (g.identity,):
        violations.append(
            SRingViolation(1, "the identity is not a class on its own")
        )

    all_classes = set(p.classes)
    for cls in p.classes:
        inv_set = tuple(sorted(g.inv[x] for x in cls))
        if inv_set not in all_classes:
            violations.append(
                SRingViolation(
                    2,
                    f"inverse of class {{{', '.join(g.name(x) for x in cls)}}}"
                    " is not a class",
                )
            )

    if violations:
        return SRingCheck(False, violations)

    mult = g.mult
    for cx in p.classes:
        for cy in p.classes:
            conv: dict[int, int] = {}
            for x in cx:
                row = mult[x]
                for y in cy:
                    z = row[y]
                    conv[z] = conv.get(z, 0) + 1
            for cls in p.classes:
                first = conv.get(cls[0], 0)
                for z in cls[1:]:
                    if conv.get(z, 0) != first:
                        violations.append(
                            SRingViolation(
                                3,
                                f"product of classes starting at {g.name(cx[0])},"
                                f" {g.name(cy[0])} has coefficients {first} and"
                                f" {conv.get(z, 0)} inside one class"
                                f" ({g.name(cls[0])} vs {g.name(z)})",
                            )
                        )
                        return SRingCheck(False, violations)
    return SRingCheck(True, [])


class _Refiner:
    """Worklist-driven partition refinement toward the minimal S-ring."""

    def __init__(self, group: Group, marked: Sequence[frozenset[int]]):
        self.g = group
        n = group.order
        sigs: dict[tuple, list[int]] = {}
        for x in range(n):
            sig = (
                x == group.identity,
                tuple(x in m for m in marked),
                tuple(group.inv[x] in m for m in marked),
            )
            sigs.setdefault(sig, []).append(x)
        self.classes: dict[int, list[int]] = {}
        self.class_of = [0] * n
        self.next_id = 0
        for sig in sorted(sigs):
            cid = self.next_id
            self.next_id += 1
            self.classes[cid] = sorted(sigs[sig])
            for x in sigs[sig]:
                self.class_of[x] = cid
        self.queue: deque[int] = deque()
        self.queued: set[int] = set()

    def _enqueue(self, cid: int) -> None:
        if cid not in self.queued:
            self.queued.add(cid)
            self.queue.append(cid)

    def _split(self, cid: int, parts: list[list[int]]) -> None:
        del self.classes[cid]
        self.queued.discard(cid)
        for part in parts:
            nid = self.next_id
            self.next_id += 1
            part.sort()
            self.classes[nid] = part
            for x in part:
                self.class_of[x] = nid
            self._enqueue(nid)

    def _refine_by_inverses(self) -> bool:
        """Split classes so that the class of the inverse is constant."""
        changed = False
        inv = self.g.inv
        for cid in list(self.classes):
            cls = self.classes.get(cid)
            if cls is None:
                continue
            buckets: dict[int, list[int]] = {}
            for x in cls:
                buckets.setdefault(self.class_of[inv[x]], []).append(x)
            if len(buckets) > 1:
                self._split(cid, list(buckets.values()))
                changed = True
        return changed

    def _refine_by_product(self, cx: int, cy: int) -> bool:
        """Split classes along the coefficient fibers of class_sum(cx) *
        class_sum(cy), intersected with the current classes."""
        xs = self.classes.get(cx)
        ys = self.classes.get(cy)
        if xs is None or ys is None:
            return False
        mult = self.g.mult
        conv: dict[int, int] = {}
        for x in xs:
            row = mult[x]
            for y in ys:
                z = row[y]
                conv[z] = conv.get(z, 0) + 1
        touched: dict[int, dict[int, list[int]]] = {}
        for z, c in conv.items():
            touched.setdefault(self.class_of[z], {}).setdefault(c, []).append(z)
        changed = False
        for cid, buckets in touched.items():
            cls = self.classes[cid]
            in_support = sum(len(b) for b in buckets.values())
            if in_support < len(cls):
                buckets.setdefault(0, []).extend(
                    z for z in cls if z not in conv
                )
            if len(buckets) > 1:
                self._split(cid, list(buckets.values()))
                changed = True
        return changed

    def run(self) -> None:
        for cid in list(self.classes):
            self._enqueue(cid)
        while True:
            while self.queue:
                cid = self.queue.popleft()
                self.queued.discard(cid)
                if cid not in self.classes:
                    continue
                self._refine_by_inverses()
                for other in list(self.classes):
                    if cid not in self.classes:
                        break
                    self._refine_by_product(cid, other)
                    self._refine_by_product(other, cid)
            # Fixed point is declared only when a full pass splits nothing.
            changed = self._refine_by_inverses()
            for cx in list(self.classes):
                for cy in list(self.classes):
                    changed |= self._refine_by_product(cx, cy)
            if not changed:
                break

    def partition(self) -> SRingPartition:
        return SRingPartition(self.g, self.classes.values())


def wl_closure(g: Group, marked: Sequence[Iterable[int]]) -> SRingPartition:
    """The coarsest S-ring partition of g in which every marked set is a
    union of classes (see the module docstring for why the result is the
    minimum and not merely some admissible partition)."""
    marked_sets = [frozenset(int(x) for x in m) for m in marked]
    for m in marked_sets:
        for x in m:
            if not 0 <= x < g.order:
                raise ValueError(f"marked element {x} out of range")
    refiner = _Refiner(g, marked_sets)
    refiner.run()
    return refiner.partition()


def radical(g: Group, x: Iterable[int]) -> Subgroup:
    """The subgroup of two-sided stabilizers {h : Xh = hX = X}."""
    xs = set(int(v) for v in x)
    mult = g.mult
    members = []
    for h in g.elements():
        if all(mult[v][h] in xs and mult[h][v] in xs for v in xs):
            members.append(h)
    return Subgroup(g, members, check=False)


def section_sring(p: SRingPartition, s: Section) -> SRingPartition:
    """The induced partition of U/L from the classes of p inside U.

    Two cosets of L belong to the same induced class iff every class of p
    inside U meets them in the same number of elements; this is exactly the
    basic-set partition of the projected span. Requires U and L to be
    unions of classes of p.
    """
    if not p.is_union_of_classes(s.upper.elements):
        raise ValueError("upper subgroup is not a union of classes")
    if not p.is_union_of_classes(s.lower.elements):
        raise ValueError("lower subgroup is not a union of classes")
    inner = [cid for cid, cls in enumerate(p.classes)
             if all(x in s.upper for x in cls)]
    q = s.quotient.order
    counts = [[0] * len(inner) for _ in range(q)]
    pos = {cid: i for i, cid in enumerate(inner)}
    for cid in inner:
        for x in p.classes[cid]:
            counts[s.projection[x]][pos[cid]] += 1
    buckets: dict[tuple[int, ...], list[int]] = {}
    for coset in range(q):
        buckets.setdefault(tuple(counts[coset]), []).append(coset)
    return SRingPartition(s.quotient, buckets.values())


@dataclass
class WreathDecomposition:
    """A section U/L realizing the generalized wreath structure, together
    with the three ranks entering the rank identity
    rank = rank_u + rank_quotient - rank_section."""

    section: Section
    rank_u: int
    rank_quotient: int
    rank_section: int

    def summary(self) -> dict:
        return {
            "lower_order": self.section.lower.order,
            "upper_order": self.section.upper.order,
            "rank_u": self.rank_u,
            "rank_quotient": self.rank_quotient,
            "rank_section": self.rank_section,
        }


def _mask_elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _subgroups_within(g: Group, members: Sequence[int]) -> list[int]:
    """Bitmasks of all subgroups of the subgroup spanned by members,
    computed as the join closure of its cyclic subgroups."""
    cyclic = {subgroup_generated(g, [x]).bitmask for x in members}
    subs = {1 << g.identity} | cyclic
    frontier = list(subs)
    while frontier:
        a = frontier.pop()
        for b in list(subs):
            j = subgroup_generated(g, _mask_elements(a | b)).bitmask
            if j not in subs:
                subs.add(j)
                frontier.append(j)
    return sorted(subs)


def detect_wreath(p: SRingPartition) -> list[WreathDecomposition]:
    """All nontrivial generalized wreath decompositions of a valid S-ring.

    A pair (U, L) qualifies when both are unions of classes, L is normal in
    the whole group, {e} < L <= U < G, and L lies in the radical of every
    class outside U. Candidate L are found inside class radicals (any valid
    L sits inside the radical of some class outside U), so S-rings whose
    classes all have trivial radical are rejected without any enumeration.
    The rank identity is asserted for every decomposition found.
    """
    g = p.group
    n = g.order
    full_mask = (1 << n) - 1
    identity_mask = 1 << g.identity

    class_masks = []
    rad_masks = []
    for cls in p.classes:
        mask = 0
        for x in cls:
            mask |= 1 << x
        class_masks.append(mask)
        rad_masks.append(radical(g, cls).bitmask)

    candidate_masks: set[int] = set()
    for rmask in set(rad_masks):
        if rmask == identity_mask or rmask == full_mask:
            continue
        for sub in _subgroups_within(g, _mask_elements(rmask)):
            if sub != identity_mask:
                candidate_masks.add(sub)

    def a_closure(mask: int) -> int:
        """Smallest union-of-classes subgroup containing the mask."""
        cur = mask
        while True:
            h = subgroup_generated(g, _mask_elements(cur)).bitmask
            grown = h
            for cmask in class_masks:
                if cmask & h:
                    grown |= cmask
            if grown == h:
                return h
            cur = grown

    results: list[WreathDecomposition] = []
    whole = Subgroup(g, g.elements(), check=False)
    for lmask in sorted(candidate_masks):
        l_elems = _mask_elements(lmask)
        if not p.is_union_of_classes(l_elems):
            continue
        l_sub = Subgroup(g, l_elems, check=False)
        if not is_normal(g, l_sub):
            continue
        covered = 0
        for cmask, rmask in zip(class_masks, rad_masks):
            if lmask & ~rmask == 0:
                covered |= cmask
        u0 = a_closure((full_mask & ~covered) | lmask)
        if u0 == full_mask:
            continue
        uppers = {u0}
        frontier = [u0]
        while frontier:
            u = frontier.pop()
            for cmask in class_masks:
                if cmask & ~u:
                    v = a_closure(u | cmask)
                    if v != full_mask and v not in uppers:
                        uppers.add(v)
                        frontier.append(v)
        for umask in sorted(uppers, key=lambda m: (m.bit_count(), m)):
            u_sub = Subgroup(g, _mask_elements(umask), check=False)
            sec = make_section(g, u_sub, l_sub)
            rank_u = sum(1 for cls in p.classes if all(x in u_sub for x in cls))
            rank_quotient = section_sring(p, make_section(g, whole, l_sub)).rank
            rank_section = section_sring(p, sec).rank
            if p.rank != rank_u + rank_quotient - rank_section:
                raise RuntimeError(
                    "wreath rank identity fails for |L|="
                    f"{l_sub.order}, |U|={u_sub.order}"
                )
            results.append(
                WreathDecomposition(sec, rank_u, rank_quotient, rank_section)
            )
    results.sort(
        key=lambda w: (w.section.lower.order, w.section.upper.order,
                       w.section.lower.elements, w.section.upper.elements)
    )
    return results


@dataclass
class TraceAssertion:
    name: str
    expected: tuple[str, ...]
    observed: tuple[str, ...]
    holds: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": list(self.expected),
            "observed": list(self.observed),
            "holds": self.holds,
        }


@dataclass
class ClosureTrace:
    """Outcome of the forced-singleton and coset assertions on the closure
    of the family graph's connection set."""

    k: int
    rank: int
    entries: list[TraceAssertion]
    all_classes_singletons: bool

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rank": self.rank,
            "all_hold": self.all_hold,
            "all_classes_singletons": self.all_classes_singletons,
            "assertions": [e.to_dict() for e in self.entries],
        }


def closure_trace(g, k: int) -> ClosureTrace:
    """Assert the singleton classes forced by the closure of the connection
    set: {cb}, {ca}, {da^-1}, {a^2}, all of A1, and for even k also {da}
    and the four cosets of L outside U as unions of classes."""
    s = connection_set(g, k)
    closure = wl_closure(g, [s])
    subs = g.standard_subgroups()

    def names(xs):
        return tuple(sorted(g.name(x) for x in xs))

    entries: list[TraceAssertion] = []

    def singleton(name: str, x: int) -> None:
        cls = closure.class_containing(x)
        entries.append(
            TraceAssertion(name, (g.name(x),), names(cls), cls == (x,))
        )

    cb = g.mul(g.c, g.b)
    ca = g.mul(g.c, g.a)
    da = g.mul(g.d, g.a)
    da_inv = g.mul(g.d, g.inverse(g.a))
    a_sq = g.element(2)
    singleton("cb_is_singleton", cb)
    singleton("ca_is_singleton", ca)
    singleton("da_inverse_is_singleton", da_inv)
    singleton("a_squared_is_singleton", a_sq)

    a1 = subs.a1.elements
    a1_union = sorted({y for x in a1 for y in closure.class_containing(x)})
    entries.append(
        TraceAssertion(
            "a1_elements_are_singletons",
            names(a1),
            names(a1_union),
            all(closure.class_containing(x) == (x,) for x in a1),
        )
    )

    if k % 2 == 0:
        singleton("da_is_singleton", da)
        cda = g.mul(g.mul(g.c, g.d), g.a)
        for label, rep in (("Lc", g.c), ("La", g.a), ("Ld", g.d), ("Lcda", cda)):
            coset = sorted(g.mul(x, rep) for x in subs.l.elements)
            observed = sorted({y for x in coset for y in closure.class_containing(x)})
            entries.append(
                TraceAssertion(
                    f"coset_{label}_is_class_union",
                    names(coset),
                    names(observed),
                    closure.is_union_of_classes(coset),
                )
            )

    singles = all(len(cls) == 1 for cls in closure.classes)
    return ClosureTrace(k, closure.rank, entries, singles)
