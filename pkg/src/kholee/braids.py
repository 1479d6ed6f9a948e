"""Braid words, braid closures, and planar link diagrams.

A braid word on ``n`` strands is a sequence of nonzero integers in
``[-(n-1), n-1]``: the letter ``g > 0`` is the positive Artin generator
``sigma_g`` (a positive crossing between strands ``g`` and ``g+1``), and
``-g`` is its inverse.  The transverse link represented by a braid word is
its closure, with self-linking number ``sl = writhe - strands``.

Closures are drawn in a fixed planar model (see :mod:`kholee.geometry`):
strands run vertically in columns ``0 .. n-1`` and the closure arcs return
around the side of the braid axis, so the oriented resolution consists of
``n`` nested Seifert circles.  All transverse machinery relies on this
canonical embedding.

Diagrams may also be built from PD codes (with explicit crossing signs)
for smooth-only computations; such diagrams carry no embedding and cannot
feed the transverse invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

# Crossing ends are numbered 0..3.  For a braid letter at columns (c, c+1)
# with strands oriented downward (entering at the top):
#   0 = NW (in, left)   1 = NE (in, right)
#   2 = SW (out, left)  3 = SE (out, right)
NW, NE, SW, SE = 0, 1, 2, 3

# A smoothing of a crossing pairs its four ends into two arcs.
# Bit 0 is the Kauffman A-smoothing: for a positive braid letter this is the
# vertical (orientation-respecting) smoothing, for a negative one the
# horizontal turnback.  Bit 1 is the opposite smoothing.
PAIRING_VERTICAL = ((NW, SW), (NE, SE))
PAIRING_TURNBACK = ((NW, NE), (SW, SE))


def smoothing_pairing(sign: int, bit: int):
    """End pairing of a braid crossing of the given sign under bit 0/1."""
    if (sign > 0) == (bit == 0):
        return PAIRING_VERTICAL
    return PAIRING_TURNBACK


def oriented_bit(sign: int) -> int:
    """The resolution bit whose smoothing respects the orientation."""
    return 0 if sign > 0 else 1


@dataclass(frozen=True)
class BraidWord:
    """A braid word: ``strands`` >= 1 and letters in ``[-(n-1), n-1]``.

    ``strands == 0`` with no letters is allowed as the empty link (needed
    as the bottom frame of filling movies).
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 0:
            raise InputError("strand count must be nonnegative")
        if self.strands == 0 and self.letters:
            raise InputError("the empty link has no letters")
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if a == 0 or abs(a) >= self.strands:
                raise InputError(
                    f"letter {a} out of range for {self.strands} strands"
                )

    # -- basic invariants ------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.strands == 0

    def writhe(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters)

    def self_linking(self) -> int:
        """sl of the closure: writhe minus braid index (0 for the empty link)."""
        if self.is_empty:
            return 0
        return self.writhe() - self.strands

    def permutation(self) -> tuple[int, ...]:
        """Image of each strand position under the braid, bottom to top."""
        perm = list(range(self.strands))
        for a in self.letters:
            g = abs(a) - 1
            perm[g], perm[g + 1] = perm[g + 1], perm[g]
        return tuple(perm)

    def component_count(self) -> int:
        """Number of link components of the closure (permutation cycles)."""
        if self.is_empty:
            return 0
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for s in range(self.strands):
            if not seen[s]:
                cycles += 1
                t = s
                while not seen[t]:
                    seen[t] = True
                    t = perm[t]
        return cycles

    def is_knot(self) -> bool:
        return self.component_count() == 1

    # -- word moves ------------------------------------------------------

    def mirrored(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in self.letters))

    def rotated(self, k: int = 1) -> "BraidWord":
        """Cyclic rotation (conjugation by a prefix); closure unchanged."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])

    def conjugated(self, a: int) -> "BraidWord":
        """sigma_a . w . sigma_a^{-1} (a may be negative)."""
        if a == 0 or abs(a) >= self.strands:
            raise InputError(f"cannot conjugate by generator {a}")
        return BraidWord(self.strands, (a,) + self.letters + (-a,))

    def stabilized(self, positive: bool = True) -> "BraidWord":
        """Markov stabilization: add a strand and append sigma_n^{+-1}."""
        n = self.strands
        if n == 0:
            raise InputError("cannot stabilize the empty link")
        return BraidWord(n + 1, self.letters + (n if positive else -n,))

    def destabilized(self) -> "BraidWord":
        """Inverse of stabilization; requires the word to end in +-sigma_{n-1}."""
        n = self.strands
        if n < 2 or not self.letters or abs(self.letters[-1]) != n - 1:
            raise InputError("word is not in stabilized form")
        for a in self.letters[:-1]:
            if abs(a) == n - 1:
                raise InputError("last strand is used before the final letter")
        return BraidWord(n - 1, self.letters[:-1])

    def insert(self, position: int, letter: int) -> "BraidWord":
        if not 0 <= position <= len(self.letters):
            raise InputError(f"insertion position {position} out of range")
        letters = self.letters[:position] + (letter,) + self.letters[position:]
        return BraidWord(self.strands, letters)

    def delete(self, position: int) -> "BraidWord":
        if not 0 <= position < len(self.letters):
            raise InputError(f"deletion position {position} out of range")
        return BraidWord(self.strands, self.letters[:position] + self.letters[position + 1:])

    # -- text form -------------------------------------------------------

    def to_text(self) -> str:
        if not self.letters:
            return f"{self.strands}:"
        return f"{self.strands}: " + " ".join(str(a) for a in self.letters)

    def __str__(self) -> str:
        return self.to_text()


def parse_braid(text: str) -> BraidWord:
    """Parse the grammar ``"n: l1 l2 ... lk"`` into a braid word."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise InputError(f"missing ':' in braid text {text!r}")
    try:
        n = int(head.strip())
    except ValueError as exc:
        raise InputError(f"bad strand count in {text!r}") from exc
    letters = []
    for tok in tail.split():
        try:
            letters.append(int(tok))
        except ValueError as exc:
            raise InputError(f"bad letter {tok!r} in {text!r}") from exc
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# Link diagrams


@dataclass(frozen=True)
class Crossing:
    """A crossing with its sign and the arcs at its four ends (NW, NE, SW, SE).

    ``arcs[e]`` is the arc id incident to end ``e``.  The cyclic (planar)
    order of the ends around the crossing is NW, NE, SE, SW.
    """

    sign: int
    arcs: tuple[int, int, int, int]


@dataclass(frozen=True)
class LinkDiagram:
    """A planar link diagram, either a braid closure or a PD-code diagram.

    ``arc_components`` partitions arc ids into link components; ``free_loops``
    counts crossing-free components (e.g. the 1-braid closure).  Braid-backed
    diagrams carry the word used to build them and support the canonical
    embedding; PD-backed diagrams have ``braid is None``.
    """

    crossings: tuple[Crossing, ...]
    n_arcs: int
    arc_components: tuple[tuple[int, ...], ...]
    free_loops: int
    braid: BraidWord | None = None

    @property
    def is_braid_closure(self) -> bool:
        return self.braid is not None

    @property
    def is_empty(self) -> bool:
        return not self.crossings and self.free_loops == 0

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def n_positive(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    def n_negative(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    def component_count(self) -> int:
        return len(self.arc_components) + self.free_loops

    def is_knot(self) -> bool:
        return self.component_count() == 1

    def mirror(self) -> "LinkDiagram":
        """Flip every crossing sign; the planar embedding is unchanged."""
        if self.braid is not None:
            return braid_closure(self.braid.mirrored())
        crossings = tuple(Crossing(-c.sign, c.arcs) for c in self.crossings)
        return LinkDiagram(crossings, self.n_arcs, self.arc_components,
                           self.free_loops, None)

    # -- resolutions -----------------------------------------------------

    def resolve_circles(self, vertex: tuple[int, ...]) -> list[frozenset[int]]:
        """Circles of the smoothing ``vertex`` as frozensets of arc ids.

        Crossing-free loop components are appended as empty frozensets at
        the end (they contain no numbered arcs).
        """
        if len(vertex) != len(self.crossings):
            raise InputError("vertex length must equal the crossing count")
        parent = list(range(self.n_arcs))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for crossing, bit in zip(self.crossings, vertex):
            for e1, e2 in smoothing_pairing(crossing.sign, bit):
                union(crossing.arcs[e1], crossing.arcs[e2])
        groups: dict[int, set[int]] = {}
        for a in range(self.n_arcs):
            groups.setdefault(find(a), set()).add(a)
        circles = [frozenset(g) for g in groups.values()]
        circles.sort(key=min)
        circles.extend(frozenset() for _ in range(self.free_loops))
        return circles

    def oriented_vertex(self) -> tuple[int, ...]:
        return tuple(oriented_bit(c.sign) for c in self.crossings)


def braid_closure(word: BraidWord) -> LinkDiagram:
    """Close a braid word into a planar link diagram.

    Arcs are the maximal strand segments between crossings; the segment of
    a column running through the closure (top of the last crossing around
    to the bottom of the first) is a single arc.  A column touched by no
    crossing closes into a free loop.
    """
    n, letters = word.strands, word.letters
    k = len(letters)
    # position_arcs[c] = arc currently open at column c (scanning upward is
    # equivalent to scanning along the word; orientation points down the
    # page but arc bookkeeping is direction-agnostic).
    touched = [False] * n
    first_end: list[tuple[int, int] | None] = [None] * n  # (crossing, end) at column bottom
    position_arcs = [-1] * n
    next_arc = 0
    ends: list[list[int | None]] = []
    for t, a in enumerate(letters):
        g = abs(a) - 1
        ends.append([None, None, None, None])
        for col, end_in, end_out in ((g, NW, SW), (g + 1, NE, SE)):
            if not touched[col]:
                touched[col] = True
                first_end[col] = (t, end_in)
            else:
                ends[t][end_in] = position_arcs[col]
                # close the previous arc at this column
            # open a new arc below/after this crossing
            position_arcs[col] = next_arc
            ends[t][end_out] = next_arc
            next_arc += 1
    free_loops = 0
    for col in range(n):
        if not touched[col]:
            free_loops += 1
        else:
            # the open arc at the top of the column wraps around the closure
            # to the first crossing end at the bottom: identify them.
            t, end_in = first_end[col]
            ends[t][end_in] = position_arcs[col]
    # Renumber arcs densely (closure identifications left gaps).
    used = sorted({a for es in ends for a in es if a is not None})
    renumber = {a: i for i, a in enumerate(used)}
    crossings = tuple(
        Crossing(1 if a > 0 else -1,
                 tuple(renumber[e] for e in ends[t]))  # type: ignore[arg-type]
        for t, a in enumerate(letters)
    )
    n_arcs = len(used)
    components = _arc_components(crossings, n_arcs)
    return LinkDiagram(crossings, n_arcs, components, free_loops, word)


def _arc_components(crossings: tuple[Crossing, ...], n_arcs: int):
    """Partition arcs into link components (arcs meeting at a crossing
    along the same strand are connected: NW-SE and NE-SW)."""
    parent = list(range(n_arcs))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in crossings:
        for e1, e2 in ((NW, SE), (NE, SW)):
            rx, ry = find(c.arcs[e1]), find(c.arcs[e2])
            if rx != ry:
                parent[rx] = ry
    groups: dict[int, list[int]] = {}
    for a in range(n_arcs):
        groups.setdefault(find(a), []).append(a)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))


def pd_diagram(pd_crossings: list[tuple[int, int, int, int]],
               signs: list[int]) -> LinkDiagram:
    """Build a diagram from a PD code with explicit crossing signs.

    Each crossing ``(a, b, c, d)`` lists arc labels counterclockwise
    starting from the incoming under-strand.  With the strands oriented,
    the A-smoothing (bit 0) joins ``a~b`` and ``c~d``; this is the
    orientation-respecting smoothing exactly for positive crossings,
    matching the braid conventions above.
    """
    if len(pd_crossings) != len(signs):
        raise InputError("PD code and sign list length mismatch")
    labels = sorted({x for quad in pd_crossings for x in quad})
    renumber = {x: i for i, x in enumerate(labels)}
    counts: dict[int, int] = {}
    for quad in pd_crossings:
        if len(quad) != 4:
            raise InputError(f"PD crossing {quad!r} does not have 4 arcs")
        for x in quad:
            counts[x] = counts.get(x, 0) + 1
    for x, cnt in counts.items():
        if cnt != 2:
            raise InputError(f"arc {x} appears {cnt} times in the PD code, expected 2")
    crossings = []
    for quad, s in zip(pd_crossings, signs):
        if s not in (1, -1):
            raise InputError(f"crossing sign must be +-1, got {s}")
        a, b, c, d = (renumber[x] for x in quad)
        # Map PD slots onto (NW, NE, SW, SE) so that the vertical pairing
        # (NW~SW, NE~SE) realizes a~b, c~d and the turnback realizes a~d, b~c.
        crossings.append(Crossing(s, (a, d, b, c)))
    crossings = tuple(crossings)
    n_arcs = len(labels)
    components = _arc_components(crossings, n_arcs)
    return LinkDiagram(crossings, n_arcs, components, 0, None)


def braid_from_json(data: dict) -> BraidWord:
    """Read the JSON schema ``{"strands": n, "letters": [...]}``."""
    try:
        return BraidWord(int(data["strands"]), tuple(int(x) for x in data["letters"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad braid JSON: {exc}") from exc


def diagram_from_pd_json(data: dict) -> LinkDiagram:
    """Read the JSON schema ``{"crossings": [[a,b,c,d], ...], "signs": [...]}``."""
    try:
        quads = [tuple(int(x) for x in quad) for quad in data["crossings"]]
        signs = [int(s) for s in data["signs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad PD JSON: {exc}") from exc
    return pd_diagram(quads, signs)


def random_conjugate_stabilize(word: BraidWord, rng, steps: int = 1,
                               max_letters: int = 12) -> BraidWord:
    """Random walk through conjugations, rotations and positive stabilizations.

    Used by invariance test suites; every output has a closure transversely
    isotopic to the input's.
    """
    w = word
    for _ in range(steps):
        moves = ["rotate"]
        if w.strands >= 2:
            moves.append("conjugate")
        if len(w.letters) < max_letters:
            moves.append("stabilize")
        move = rng.choice(moves)
        if move == "rotate":
            w = w.rotated(rng.randrange(max(1, len(w.letters) or 1)))
        elif move == "conjugate":
            g = rng.randrange(1, w.strands)
            w = w.conjugated(g if rng.random() < 0.5 else -g)
        else:
            w = w.stabilized(positive=True)
    return w
