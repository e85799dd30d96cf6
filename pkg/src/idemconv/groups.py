"""Finite groups as explicit multiplication tables, plus subgroup machinery.

Composition convention, fixed globally: ``g * h`` means "apply h, then g"
(left action). All element arithmetic goes through the tables; permutations
and construction formulas exist only while a table is being built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import lcm
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import MismatchedParents, PreconditionError

__all__ = [
    "GroupTable",
    "Subgroup",
    "CosetSpace",
    "ProductVerdict",
    "Quotient",
    "closure",
    "subgroup_from_elements",
    "trivial_subgroup",
    "full_subgroup",
    "product_set",
    "is_subgroup_product",
    "normalizer",
    "centralizer",
    "commutator_subgroup",
    "quotient_group",
    "intersection",
    "is_matched_pair",
    "all_subgroups",
    "normal_subgroups",
    "left_cosets",
    "symmetric_group",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "semidirect_product",
    "from_permutations",
    "from_table",
]

_ASSOC_CHUNK_CELLS = 2_000_000  # rows per chunk sized so chunk*n*n stays near this


def _find_identity(mul: Sequence[Sequence[int]]) -> int:
    n = len(mul)
    straight = list(range(n))
    for e in range(n):
        if list(mul[e]) == straight and all(mul[g][e] == g for g in range(n)):
            return e
    raise ValueError("table has no two-sided identity")


def _find_inverses(mul: Sequence[Sequence[int]], identity: int) -> tuple[int, ...]:
    n = len(mul)
    inv = []
    for g in range(n):
        h = next((x for x in range(n) if mul[g][x] == identity), None)
        if h is None or mul[h][g] != identity:
            raise ValueError(f"element {g} has no two-sided inverse")
        inv.append(h)
    return tuple(inv)


def _check_associativity(mul_np: np.ndarray) -> None:
    n = mul_np.shape[0]
    if n > 200:
        # spot check beyond the fully-verifiable size
        rng = np.random.default_rng(0)
        idx = rng.integers(0, n, size=(20000, 3))
        a, b, c = idx[:, 0], idx[:, 1], idx[:, 2]
        if not np.array_equal(mul_np[mul_np[a, b], c], mul_np[a, mul_np[b, c]]):
            raise ValueError("table is not associative")
        return
    chunk = max(1, _ASSOC_CHUNK_CELLS // (n * n))
    for start in range(0, n, chunk):
        rows = mul_np[start : start + chunk]
        left = mul_np[rows, :]
        right = rows[:, mul_np]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            a, b, c = start + bad[0], bad[1], bad[2]
            raise ValueError(f"table is not associative at ({a},{b},{c})")


class GroupTable:
    """A finite group: order, multiplication and inverse tables, labels.

    Instances are immutable after construction and compare by identity;
    two independently built copies of the same group are distinct parents.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ):
        n = len(mul)
        if n == 0:
            raise ValueError("empty table")
        table = tuple(tuple(int(x) for x in row) for row in mul)
        for row in table:
            if len(row) != n or any(x < 0 or x >= n for x in row):
                raise ValueError("table rows must be length-n index vectors")
        mul_np = np.array(table, dtype=np.int64)
        _check_associativity(mul_np)
        identity = _find_identity(table)
        inv = _find_inverses(table, identity)
        if labels is None:
            labels = [f"g{i}" for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be distinct, one per element")

        self.order = n
        self.mul = table
        self.inv = inv
        self.identity = identity
        self.labels = labels
        self.name = name if name is not None else f"G{n}"
        self._mul_np = mul_np
        orders = [self.element_order(g) for g in range(n)]
        self.exponent = lcm(*orders) if orders else 1

    @cached_property
    def mul_np(self) -> np.ndarray:
        return self._mul_np

    @cached_property
    def mul_flat(self) -> np.ndarray:
        return self._mul_np.reshape(-1)

    @cached_property
    def _mul_lists(self) -> list[list[int]]:
        return [list(row) for row in self.mul]

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def idx(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.mul[self.mul[g][a]][self.inv[g]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        x = self.identity
        for _ in range(k):
            x = self.mul[x][g]
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._mul_np, self._mul_np.T))

    def __repr__(self) -> str:
        return f"<GroupTable {self.name} order={self.order}>"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of a parent GroupTable, stored as sorted element indices."""

    parent: GroupTable
    elements: tuple[int, ...]
    generators: tuple[int, ...]

    def __post_init__(self):
        if self.elements != tuple(sorted(set(self.elements))):
            raise ValueError("elements must be sorted and distinct")

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @cached_property
    def label_list(self) -> tuple[str, ...]:
        return tuple(self.parent.labels[g] for g in self.elements)

    def is_normal(self) -> bool:
        return is_normal_in(self, full_subgroup(self.parent))

    def __repr__(self) -> str:
        inside = ",".join(self.label_list[:6])
        if self.order > 6:
            inside += ",..."
        return f"<Subgroup order={self.order} {{{inside}}} of {self.parent.name}>"


def _validated_subgroup(
    parent: GroupTable, elements: Iterable[int], generators: Iterable[int]
) -> Subgroup:
    elts = tuple(sorted(set(int(x) for x in elements)))
    sub = Subgroup(parent, elts, tuple(generators))
    eset = sub.element_set
    if parent.identity not in eset:
        raise ValueError("subgroup must contain the identity")
    mul, inv = parent.mul, parent.inv
    for a in elts:
        if inv[a] not in eset:
            raise ValueError(f"not inverse-closed at {parent.labels[a]}")
        row = mul[a]
        for b in elts:
            if row[b] not in eset:
                raise ValueError(
                    f"not closed: {parent.labels[a]}*{parent.labels[b]} escapes"
                )
    return sub


def subgroup_from_elements(
    parent: GroupTable,
    elements: Iterable[int],
    generators: Optional[Iterable[int]] = None,
    *,
    validate: bool = True,
) -> Subgroup:
    elts = tuple(sorted(set(int(x) for x in elements)))
    gens = tuple(generators) if generators is not None else elts
    if validate:
        return _validated_subgroup(parent, elts, gens)
    return Subgroup(parent, elts, gens)


def closure(parent: GroupTable, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed elements."""
    gens = sorted(set(int(x) for x in seed))
    for g in gens:
        if g < 0 or g >= parent.order:
            raise ValueError(f"element index {g} out of range")
    mul = parent._mul_lists
    e = parent.identity
    seen = {e}
    frontier = [e]
    while frontier:
        fresh = []
        for x in frontier:
            row = mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return Subgroup(parent, tuple(sorted(seen)), tuple(gens))


def trivial_subgroup(parent: GroupTable) -> Subgroup:
    return Subgroup(parent, (parent.identity,), ())


def full_subgroup(parent: GroupTable) -> Subgroup:
    return Subgroup(parent, tuple(range(parent.order)), tuple(range(parent.order)))


def _require_same_parent(*subs: Subgroup) -> GroupTable:
    parent = subs[0].parent
    for s in subs[1:]:
        if s.parent is not parent:
            raise MismatchedParents(
                f"subgroups live in different parents ({parent.name} vs {s.parent.name})"
            )
    return parent


def product_set(k1: Subgroup, k2: Subgroup) -> tuple[int, ...]:
    """The set {a*b : a in K1, b in K2}, sorted."""
    parent = _require_same_parent(k1, k2)
    mul = parent.mul
    out = {mul[a][b] for a in k1.elements for b in k2.elements}
    return tuple(sorted(out))


@dataclass(frozen=True)
class ProductVerdict:
    is_subgroup: bool
    subgroup: Optional[Subgroup]
    witness_kind: Optional[str]  # 'inverse_escapes' | 'product_escapes'
    witness: Optional[Union[int, tuple[int, int]]]


def is_subgroup_product(k1: Subgroup, k2: Subgroup) -> ProductVerdict:
    """Decide whether the product set K1K2 is a subgroup.

    Three equivalent conditions are evaluated independently (subgroup,
    inversion-closed, K1K2 = K2K1) and must agree; disagreement would be an
    internal defect, not an input error.
    """
    parent = _require_same_parent(k1, k2)
    p12 = product_set(k1, k2)
    p21 = product_set(k2, k1)
    pset = frozenset(p12)
    mul, inv = parent.mul, parent.inv

    inversion_closed = all(inv[x] in pset for x in p12)
    sets_agree = p12 == p21
    closed = all(mul[a][b] in pset for a in p12 for b in p12)
    subgroup_cond = closed and inversion_closed
    assert subgroup_cond == inversion_closed == sets_agree, (
        "product-set subgroup criteria disagree"
    )

    if subgroup_cond:
        sub = subgroup_from_elements(
            parent, p12, k1.generators + k2.generators, validate=False
        )
        return ProductVerdict(True, sub, None, None)
    for x in p12:
        if inv[x] not in pset:
            return ProductVerdict(False, None, "inverse_escapes", x)
    for a in p12:
        for b in p12:
            if mul[a][b] not in pset:
                return ProductVerdict(False, None, "product_escapes", (a, b))
    raise AssertionError("non-subgroup product with no witness")


def normalizer(k: Subgroup) -> Subgroup:
    parent = k.parent
    eset = k.element_set
    members = [
        g
        for g in range(parent.order)
        if all(parent.conjugate(g, a) in eset for a in k.elements)
    ]
    return subgroup_from_elements(parent, members, validate=False)


def centralizer(k: Subgroup) -> Subgroup:
    parent = k.parent
    mul = parent.mul
    members = [
        g
        for g in range(parent.order)
        if all(mul[g][a] == mul[a][g] for a in k.elements)
    ]
    return subgroup_from_elements(parent, members, validate=False)


def commutator_subgroup(k: Subgroup) -> Subgroup:
    parent = k.parent
    mul, inv = parent.mul, parent.inv
    comms = {
        mul[mul[a][b]][mul[inv[a]][inv[b]]]
        for a in k.elements
        for b in k.elements
    }
    return closure(parent, comms)


def intersection(k1: Subgroup, k2: Subgroup) -> Subgroup:
    parent = _require_same_parent(k1, k2)
    elts = tuple(sorted(k1.element_set & k2.element_set))
    return Subgroup(parent, elts, elts)


def is_normal_in(n: Subgroup, h: Subgroup) -> bool:
    _require_same_parent(n, h)
    if not n.element_set <= h.element_set:
        return False
    parent = n.parent
    nset = n.element_set
    return all(
        parent.conjugate(g, a) in nset for g in h.elements for a in n.elements
    )


def is_matched_pair(k1: Subgroup, k2: Subgroup) -> bool:
    """Trivial intersection and the product set is a subgroup."""
    if intersection(k1, k2).order != 1:
        return False
    return is_subgroup_product(k1, k2).is_subgroup


@dataclass(frozen=True)
class Quotient:
    group: GroupTable
    projection: dict[int, int]  # parent element index -> quotient index
    cosets: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]


def quotient_group(h: Subgroup, n: Subgroup) -> Quotient:
    """The quotient H/N with its projection, for N normal in H."""
    parent = _require_same_parent(h, n)
    if not n.element_set <= h.element_set:
        raise PreconditionError("N is not contained in H")
    if not is_normal_in(n, h):
        raise PreconditionError("N is not normal in H")
    mul = parent.mul
    coset_of: dict[int, int] = {}
    cosets: list[tuple[int, ...]] = []
    reps: list[int] = []
    for x in h.elements:
        if x in coset_of:
            continue
        coset = tuple(sorted(mul[x][m] for m in n.elements))
        idx = len(cosets)
        for y in coset:
            coset_of[y] = idx
        cosets.append(coset)
        reps.append(coset[0])
    q_order = len(cosets)
    q_mul = [
        [coset_of[mul[reps[i]][reps[j]]] for j in range(q_order)]
        for i in range(q_order)
    ]
    q_labels = [f"[{parent.labels[r]}]" for r in reps]
    q_name = f"{parent.name}/N{n.order}"
    group = GroupTable(q_mul, q_labels, name=q_name)
    return Quotient(group, coset_of, tuple(cosets), tuple(reps))


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets hL of L inside H, with one representative per coset."""

    parent: Subgroup  # H
    subgroup: Subgroup  # L
    cosets: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    def coset_index_of(self, g: int) -> int:
        for i, coset in enumerate(self.cosets):
            if g in coset:
                return i
        raise KeyError(f"element {g} not in the coset space")


def left_cosets(h: Subgroup, lsub: Subgroup) -> CosetSpace:
    parent = _require_same_parent(h, lsub)
    if not lsub.element_set <= h.element_set:
        raise PreconditionError("L is not contained in H")
    mul = parent.mul
    seen: set[int] = set()
    cosets: list[tuple[int, ...]] = []
    reps: list[int] = []
    for x in h.elements:
        if x in seen:
            continue
        coset = tuple(sorted(mul[x][m] for m in lsub.elements))
        seen.update(coset)
        cosets.append(coset)
        reps.append(coset[0])
    if sum(len(c) for c in cosets) != h.order or any(
        len(c) != lsub.order for c in cosets
    ):
        raise AssertionError("cosets do not partition H into |L|-sized blocks")
    return CosetSpace(h, lsub, tuple(cosets), tuple(reps))


@lru_cache(maxsize=None)
def _all_subgroups_cached(
    parent_ref: GroupTable, ambient_elements: tuple[int, ...]
) -> tuple[Subgroup, ...]:
    triv = trivial_subgroup(parent_ref)
    found: dict[tuple[int, ...], Subgroup] = {triv.elements: triv}
    frontier = [triv]
    while frontier:
        fresh = []
        for h in frontier:
            eset = h.element_set
            for g in ambient_elements:
                if g in eset:
                    continue
                s = closure(parent_ref, h.generators + (g,))
                if s.elements not in found:
                    found[s.elements] = s
                    fresh.append(s)
        frontier = fresh
    return tuple(sorted(found.values(), key=lambda s: (s.order, s.elements)))


def all_subgroups(ambient: Union[GroupTable, Subgroup]) -> tuple[Subgroup, ...]:
    """Every subgroup contained in the ambient group (or Subgroup).

    Breadth-first closure over one-generator extensions, deduplicated by
    element set; ordered by (order, elements). Intended for desk-scale
    lattices (|ambient| up to a couple hundred).
    """
    if isinstance(ambient, GroupTable):
        sub = full_subgroup(ambient)
    else:
        sub = ambient
    return _all_subgroups_cached(sub.parent, sub.elements)


def normal_subgroups(k: Subgroup) -> tuple[Subgroup, ...]:
    return tuple(n for n in all_subgroups(k) if is_normal_in(n, k))


# ---------------------------------------------------------------------------
# constructions


def _perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(p)))


def _cycle_label(perm: Sequence[int]) -> str:
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        parts.append(cyc)
    if not parts:
        return "e"
    sep = "" if n <= 9 else ","
    return "".join("(" + sep.join(str(v) for v in c) + ")" for c in parts)


def symmetric_group(n: int) -> GroupTable:
    """S_n on points 1..n; labels in cycle notation."""
    if n < 1:
        raise ValueError("need n >= 1")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    labels = [_cycle_label(p) for p in perms]
    return GroupTable(mul, labels, name=f"S{n}")


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("need n >= 1")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + ["a" if i == 1 else f"a^{i}" for i in range(1, n)]
    return GroupTable(mul, labels[:n], name=f"C{n}")


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n: rotations r^i and reflections r^i s."""
    if n < 1:
        raise ValueError("need n >= 1")

    def pack(i: int, j: int) -> int:
        return j * n + i

    mul = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(2):
            for k in range(n):
                for l_ in range(2):
                    rot = (i + (k if j == 0 else -k)) % n
                    mul[pack(i, j)][pack(k, l_)] = pack(rot, (j + l_) % 2)
    labels = []
    for j in range(2):
        for i in range(n):
            r = "e" if i == 0 else ("r" if i == 1 else f"r^{i}")
            if j == 0:
                labels.append(r)
            else:
                labels.append("s" if i == 0 else ("rs" if i == 1 else f"r^{i}s"))
    return GroupTable(mul, labels, name=f"D{n}")


def quaternion_group() -> GroupTable:
    """The quaternion group {1,-1,i,-i,j,-j,k,-k}."""
    # axis 0 is the scalar unit; (axis, axis) -> (sign, axis) per quaternion rules
    axis_mul = {}
    for a in range(4):
        axis_mul[(0, a)] = (0, a)
        axis_mul[(a, 0)] = (0, a)
    for a in (1, 2, 3):
        axis_mul[(a, a)] = (1, 0)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        axis_mul[(a, b)] = (0, c)
        axis_mul[(b, a)] = (1, c)

    def pack(sign: int, axis: int) -> int:
        return axis * 2 + sign

    mul = [[0] * 8 for _ in range(8)]
    for s1 in range(2):
        for a1 in range(4):
            for s2 in range(2):
                for a2 in range(4):
                    s3, a3 = axis_mul[(a1, a2)]
                    mul[pack(s1, a1)][pack(s2, a2)] = pack((s1 + s2 + s3) % 2, a3)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return GroupTable(mul, names, name="Q8")


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    na, nb = a.order, b.order

    def pack(x: int, y: int) -> int:
        return x * nb + y

    mul = [[0] * (na * nb) for _ in range(na * nb)]
    for x1 in range(na):
        for y1 in range(nb):
            r = mul[pack(x1, y1)]
            for x2 in range(na):
                for y2 in range(nb):
                    r[pack(x2, y2)] = pack(a.mul[x1][x2], b.mul[y1][y2])
    labels = [
        f"({a.labels[x]},{b.labels[y]})" for x in range(na) for y in range(nb)
    ]
    return GroupTable(mul, labels, name=f"{a.name}x{b.name}")


def semidirect_product(
    n_grp: GroupTable,
    a_grp: GroupTable,
    action: Union[Sequence[Sequence[int]], Callable[[int], Sequence[int]]],
) -> GroupTable:
    """N semidirect A with multiplication (k,x)(k',y) = (k * x(k'), x*y).

    The action maps each element of A to a permutation of N's indices; it
    must be a homomorphism into automorphisms of N (validated).
    """
    nn, na = n_grp.order, a_grp.order
    if callable(action):
        acts = [tuple(action(x)) for x in range(na)]
    else:
        acts = [tuple(p) for p in action]
    if len(acts) != na:
        raise ValueError("need one automorphism per element of A")
    straight = tuple(range(nn))
    for x, p in enumerate(acts):
        if tuple(sorted(p)) != straight:
            raise ValueError(f"action of {a_grp.labels[x]} is not a bijection")
        for u in range(nn):
            for v in range(nn):
                if p[n_grp.mul[u][v]] != n_grp.mul[p[u]][p[v]]:
                    raise ValueError(
                        f"action of {a_grp.labels[x]} is not an automorphism"
                    )
    if acts[a_grp.identity] != straight:
        raise ValueError("identity of A must act trivially")
    for x in range(na):
        for y in range(na):
            if acts[a_grp.mul[x][y]] != _perm_compose(acts[x], acts[y]):
                raise ValueError("action is not a homomorphism")

    def pack(k: int, x: int) -> int:
        return k * na + x

    order = nn * na
    mul = [[0] * order for _ in range(order)]
    for k in range(nn):
        for x in range(na):
            r = mul[pack(k, x)]
            act = acts[x]
            for k2 in range(nn):
                for y in range(na):
                    r[pack(k2, y)] = pack(n_grp.mul[k][act[k2]], a_grp.mul[x][y])
    labels = [
        f"({n_grp.labels[k]},{a_grp.labels[x]})"
        for k in range(nn)
        for x in range(na)
    ]
    return GroupTable(mul, labels, name=f"{n_grp.name}:{a_grp.name}")


def from_permutations(
    gens: Sequence[Sequence[int]], degree: Optional[int] = None
) -> GroupTable:
    """The permutation group generated by 0-based permutation tuples."""
    if not gens and degree is None:
        raise ValueError("need generators or an explicit degree")
    d = degree if degree is not None else len(gens[0])
    gen_tuples = []
    straight = tuple(range(d))
    for p in gens:
        pt = tuple(int(x) for x in p)
        if tuple(sorted(pt)) != straight:
            raise ValueError(f"{p} is not a permutation of 0..{d-1}")
        gen_tuples.append(pt)
    seen = {straight}
    frontier = [straight]
    while frontier:
        fresh = []
        for p in frontier:
            for g in gen_tuples:
                q = _perm_compose(p, g)
                if q not in seen:
                    seen.add(q)
                    fresh.append(q)
        frontier = fresh
    perms = sorted(seen)
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    labels = [_cycle_label(p) for p in perms]
    return GroupTable(mul, labels, name=f"perm{len(perms)}")


def from_table(
    mul: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
) -> GroupTable:
    return GroupTable(mul, labels, name=name)
