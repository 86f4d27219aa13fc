"""Finite posets and the combinatorial operators the rest of the package uses.

Elements are opaque string labels, enumerated lexicographically so all
outputs are deterministic.  Sizes are capped at 64 elements; every downstream
algorithm enumerates chains or subsets.  Posets are immutable after build.
"""

from __future__ import annotations

import itertools


MAX_ELEMENTS = 64


class PosetError(ValueError):
    pass


class Poset:
    """A finite poset given by labels and the cover (Hasse) relation.

    `below[i]` is the set of indices <= i, regenerated from the cover list
    by transitive closure at build time.
    """

    def __init__(self, labels, cover_pairs):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise PosetError(f"duplicate label: {dup[0]}")
        if len(labels) > MAX_ELEMENTS:
            raise PosetError(f"poset too large ({len(labels)} > {MAX_ELEMENTS})")
        self.labels = tuple(sorted(labels, key=str))
        self.index = {x: i for i, x in enumerate(self.labels)}
        n = len(self.labels)
        covers = []
        for a, b in cover_pairs:
            if a not in self.index or b not in self.index:
                missing = a if a not in self.index else b
                raise PosetError(f"cover uses unknown label {missing!r}")
            if a == b:
                raise PosetError(f"cover {a!r} < {b!r} is reflexive")
            covers.append((self.index[a], self.index[b]))
        # transitive closure by repeated relaxation over the cover digraph
        below = [{i} for i in range(n)]
        changed = True
        while changed:
            changed = False
            for a, b in covers:
                new = below[a] - below[b]
                if new:
                    below[b] |= new
                    changed = True
        for i in range(n):
            for j in below[i]:
                if j != i and i in below[j]:
                    raise PosetError(
                        f"cycle detected through {self.labels[i]!r} and {self.labels[j]!r}")
        self.below = [frozenset(s) for s in below]
        # prune transitive covers so the Hasse list is minimal
        hasse = []
        for a, b in sorted(set(covers)):
            if any(a in self.below[c] and c in self.below[b] and c not in (a, b)
                   for c in range(n)):
                continue
            hasse.append((a, b))
        self.covers = tuple(sorted(set(hasse)))
        self._rank = None

    # -- basic queries ----------------------------------------------------
    def __len__(self):
        return len(self.labels)

    def __contains__(self, x):
        return x in self.index

    def leq(self, x, y) -> bool:
        return self.index[x] in self.below[self.index[y]]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def cover_pairs(self):
        return [(self.labels[a], self.labels[b]) for a, b in self.covers]

    def down_indices(self, i):
        return self.below[i]

    def up_indices(self, i):
        return frozenset(j for j in range(len(self.labels)) if i in self.below[j])

    def down_set(self, x):
        """The open set of elements <= x."""
        i = self.index[x]
        return OpenSet(self, [self.labels[j] for j in self.below[i]])

    def up_set(self, x):
        """Elements >= x (an up-set; not open in general)."""
        i = self.index[x]
        return frozenset(self.labels[j] for j in self.up_indices(i))

    def maximal_elements(self, members=None):
        members = self.labels if members is None else sorted(members, key=str)
        out = []
        for x in members:
            if not any(self.lt(x, y) for y in members):
                out.append(x)
        return out

    def minimal_elements(self, members=None):
        members = self.labels if members is None else sorted(members, key=str)
        out = []
        for x in members:
            if not any(self.lt(y, x) for y in members):
                out.append(x)
        return out

    # -- intervals ---------------------------------------------------------
    def interval(self, x, y, flavor="closed"):
        """Elements between x and y; flavor picks which endpoints stay."""
        if not self.leq(x, y):
            raise PosetError(f"{x!r} is not <= {y!r}")
        i, j = self.index[x], self.index[y]
        members = {self.labels[k] for k in self.below[j] if i in self.below[k]}
        if flavor == "closed":
            pass
        elif flavor == "open":
            members -= {x, y}
        elif flavor == "half-open-left":
            members -= {x}
        elif flavor == "half-open-right":
            members -= {y}
        else:
            raise PosetError(f"unknown interval flavor {flavor!r}")
        return self.induced(members)

    def strict_up_interval(self, x, members=None):
        """The open interval (x, 1-hat) inside `members`: everything above x."""
        pool = self.labels if members is None else members
        return self.induced([y for y in pool if self.lt(x, y)])

    def induced(self, members):
        """The sub-poset on `members` with the induced order."""
        members = sorted(set(members), key=str)
        memberset = set(members)
        covers = []
        for x in members:
            for y in members:
                if self.lt(x, y) and not any(
                        self.lt(x, z) and self.lt(z, y) for z in memberset):
                    covers.append((x, y))
        return Poset(members, covers)

    # -- rank --------------------------------------------------------------
    def rank_info(self):
        """(rank of P, {element: rank}, is_locally_graded)."""
        if self._rank is not None:
            return self._rank
        n = len(self.labels)
        ranks = {}
        order = sorted(range(n), key=lambda i: len(self.below[i]))
        idx_rank = [0] * n
        for i in order:
            preds = [j for j in self.below[i] if j != i]
            idx_rank[i] = 1 + max((idx_rank[j] for j in preds), default=-1)
        for i in range(n):
            ranks[self.labels[i]] = idx_rank[i]
        total = max(idx_rank, default=-1)
        locally_graded = all(
            len({len(c) for c in self._maximal_chains_below(i)}) <= 1
            for i in range(n))
        self._rank = (total, ranks, locally_graded)
        return self._rank

    def rank(self) -> int:
        return self.rank_info()[0]

    def element_rank(self, x) -> int:
        return self.rank_info()[1][x]

    def is_locally_graded(self) -> bool:
        return self.rank_info()[2]

    def _maximal_chains_below(self, i):
        """Maximal chains of {j : j <= i}, each ending at i."""
        chains = []
        cover_down = {}
        for a, b in self.covers:
            cover_down.setdefault(b, []).append(a)

        def rec(chain):
            top = chain[-1]
            preds = [a for a in cover_down.get(top, []) if a in self.below[i]]
            # preds within the down-set are exactly the covers in it
            if not preds:
                chains.append(list(chain))
                return
            for a in sorted(preds):
                chain.append(a)
                rec(chain)
                chain.pop()

        rec([i])
        return chains

    def maximal_chains(self):
        """All maximal chains of P as label tuples, ascending."""
        out = []
        tops = [self.index[x] for x in self.maximal_elements()]
        for t in tops:
            for c in self._maximal_chains_below(t):
                out.append(tuple(self.labels[i] for i in reversed(c)))
        return sorted(out)

    def chains(self):
        """Every chain (totally ordered subset) in ascending order,
        including the empty chain."""
        n = len(self.labels)
        ext = sorted(range(n), key=lambda i: (len(self.below[i]), self.labels[i]))
        out = [()]

        def rec(start, chain):
            for k in range(start, n):
                i = ext[k]
                if not chain or chain[-1] in self.below[i]:
                    chain.append(i)
                    out.append(tuple(self.labels[j] for j in chain))
                    rec(k + 1, chain)
                    chain.pop()

        rec(0, [])
        return out

    # -- the rank-selection vocabulary --------------------------------------
    def skeleton(self, i):
        """Open set of elements of rank <= i."""
        _, ranks, _ = self.rank_info()
        return OpenSet(self, [x for x in self.labels if ranks[x] <= i])

    def star(self, x):
        """Open set of elements sharing an upper bound with x."""
        ix = self.index[x]
        ups = self.up_indices(ix)
        members = set()
        for z in ups:
            members |= self.below[z]
        return OpenSet(self, [self.labels[j] for j in members])

    def remove_up_sets(self, X):
        """Open set P minus the union of [x, top) over x in X."""
        removed = set()
        for x in X:
            removed |= self.up_indices(self.index[x])
        return OpenSet(self, [self.labels[j] for j in range(len(self.labels))
                              if j not in removed])

    def is_excellent(self, X) -> bool:
        """At most one element of X below each maximal element of P."""
        X = set(X)
        if not X:
            raise PosetError("excellence is defined for nonempty subsets")
        for z in self.maximal_elements():
            if sum(1 for x in X if self.leq(x, z)) > 1:
                return False
        return True

    def meet_and_mubs(self, x, y):
        """(meet or None, sorted minimal upper bounds, possibly empty)."""
        lows = [z for z in self.labels if self.leq(z, x) and self.leq(z, y)]
        maximal_lows = [z for z in lows if not any(self.lt(z, w) for w in lows)]
        meet = maximal_lows[0] if len(maximal_lows) == 1 else None
        ups = [z for z in self.labels if self.leq(x, z) and self.leq(y, z)]
        mubs = [z for z in ups if not any(self.lt(w, z) for w in ups)]
        return meet, sorted(mubs, key=str)

    def is_locally_distributive(self):
        """(bool, witness interval labels or None).

        True iff P has a minimum and every [0,z] is a distributive lattice.
        """
        mins = self.minimal_elements()
        if len(mins) != 1:
            return False, None
        bottom = mins[0]
        for z in self.labels:
            interval = self.interval(bottom, z)
            ok = _is_distributive_lattice(interval)
            if not ok:
                return False, (bottom, z)
        return True, None

    def order_ideals(self, cap=8192):
        """All open sets (downward closed subsets) as sorted label tuples."""
        n = len(self.labels)
        ideals = {frozenset()}
        # incremental construction needs a linear extension
        for i in sorted(range(n), key=lambda k: (len(self.below[k]),
                                                 self.labels[k])):
            lab = self.labels[i]
            need = {self.labels[j] for j in self.below[i]} - {lab}
            new = set()
            for ide in ideals:
                if need <= ide:
                    new.add(ide | {lab})
            ideals |= new
            if len(ideals) > cap:
                raise PosetError(f"more than {cap} open sets; raise the cap or sample")
        return sorted(tuple(sorted(s, key=str)) for s in ideals)

    def __repr__(self):
        return f"Poset({list(self.labels)}, covers={self.cover_pairs()})"


def _is_distributive_lattice(q: Poset) -> bool:
    labels = q.labels
    meets = {}
    joins = {}
    for x in labels:
        for y in labels:
            m, ub = q.meet_and_mubs(x, y)
            if m is None or len(ub) != 1:
                return False
            meets[x, y] = m
            joins[x, y] = ub[0]
    for x, y, z in itertools.product(labels, repeat=3):
        lhs = meets[x, joins[y, z]]
        rhs = joins[meets[x, y], meets[x, z]]
        if lhs != rhs:
            return False
    return True


class OpenSet:
    """A downward-closed subset of a parent poset."""

    def __init__(self, parent: Poset, members):
        self.parent = parent
        self.members = frozenset(members)
        for x in self.members:
            if x not in parent:
                raise PosetError(f"unknown element {x!r}")
            i = parent.index[x]
            for j in parent.below[i]:
                if parent.labels[j] not in self.members:
                    raise PosetError(
                        f"not downward closed: {parent.labels[j]!r} <= {x!r} is missing")

    def sorted_members(self):
        return sorted(self.members, key=str)

    def poset(self) -> Poset:
        return self.parent.induced(self.members)

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, OpenSet):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __repr__(self):
        return f"OpenSet({self.sorted_members()})"


def is_open(parent: Poset, members) -> bool:
    try:
        OpenSet(parent, members)
        return True
    except PosetError:
        return False


def build(elements, cover_pairs) -> Poset:
    """Public constructor mirroring the text format."""
    return Poset(elements, cover_pairs)
