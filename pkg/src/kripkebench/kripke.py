"""Finite Kripke frames and models, forcing, and frame validity.

A frame is a finite partial order on worlds 0..n-1, stored as one
successor bitmask per world so that order queries and the semantic
clauses reduce to integer bit operations.  All values are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping

from .formula import And, Atom, Bottom, Formula, Or, Top, atoms, render


class UnknownWorld(ValueError):
    """A world index outside the frame."""

    def __init__(self, world):
        super().__init__(f"unknown world {world!r}")
        self.world = world


class AntisymmetryViolation(ValueError):
    """The closed relation relates two distinct worlds both ways."""

    def __init__(self, pair: tuple[int, int]):
        x, y = pair
        super().__init__(f"not a partial order: {x} <= {y} and {y} <= {x}")
        self.pair = pair


class InvalidModel(ValueError):
    """A valuation that is not a legal monotone valuation on its frame."""


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


@dataclass(frozen=True)
class Frame:
    """Finite partial order: bit j of up[i] is set iff world i <= world j.

    Build frames with make_frame (which closes and validates the input
    relation) or one of the shape helpers below; the constructor itself
    trusts its argument.
    """

    up: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.up)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.up)) - 1

    def le(self, x: int, y: int) -> bool:
        return self.up[x] >> y & 1 == 1

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with i < j in the order, i != j."""
        return [
            (i, j)
            for i in range(self.size)
            for j in _bits(self.up[i] & ~(1 << i))
        ]

    def _down_masks(self) -> list[int]:
        down = [0] * self.size
        for i in range(self.size):
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        return down

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs: i < j with no world strictly between."""
        down = self._down_masks()
        out = []
        for i, j in self.strict_pairs():
            between = self.up[i] & down[j] & ~(1 << i) & ~(1 << j)
            if between == 0:
                out.append((i, j))
        return out

    def _upset_masks(self) -> list[int]:
        out = []
        for mask in range(1 << self.size):
            if all(self.up[i] & ~mask == 0 for i in _bits(mask)):
                out.append(mask)
        return out

    def _downset_masks(self) -> list[int]:
        down = self._down_masks()
        out = []
        for mask in range(1 << self.size):
            if all(down[i] & ~mask == 0 for i in _bits(mask)):
                out.append(mask)
        return out

    def upsets(self) -> list[frozenset[int]]:
        """All upward-closed world sets, ascending in bitmask order."""
        return [_mask_to_set(m) for m in self._upset_masks()]

    def cone(self, x: int) -> tuple[Frame, tuple[int, ...]]:
        """Generated subframe on {y : x <= y} plus the index mapping.

        The mapping sends each new index to the original world it names.
        """
        if not 0 <= x < self.size:
            raise UnknownWorld(x)
        members = _bits(self.up[x])
        pos = {w: i for i, w in enumerate(members)}
        rows = []
        for w in members:
            m = 0
            for v in _bits(self.up[w]):
                m |= 1 << pos[v]
            rows.append(m)
        return Frame(tuple(rows)), tuple(members)

    def depth(self) -> int:
        """Worlds in a longest chain; a single world has depth 1."""
        memo: dict[int, int] = {}

        def height(i: int) -> int:
            if i not in memo:
                above = _bits(self.up[i] & ~(1 << i))
                memo[i] = 1 + max((height(j) for j in above), default=0)
            return memo[i]

        return max(height(i) for i in range(self.size))

    def width(self) -> int:
        """Largest set of pairwise incomparable worlds."""
        down = self._down_masks()
        comparable = [self.up[i] | down[i] for i in range(self.size)]
        best = 1
        for mask in range(1, 1 << self.size):
            members = _bits(mask)
            if all(mask & comparable[i] & ~(1 << i) == 0 for i in members):
                best = max(best, len(members))
        return best


def make_frame(size: int, pairs: Iterable[tuple[int, int]] = ()) -> Frame:
    """Reflexive-transitive closure of pairs as a partial order.

    Raises AntisymmetryViolation if the closure relates two distinct
    worlds both ways, and UnknownWorld for an index outside 0..size-1.
    """
    if size < 1:
        raise ValueError("a frame needs at least one world")
    up = [1 << i for i in range(size)]
    for x, y in pairs:
        for w in (x, y):
            if not 0 <= w < size:
                raise UnknownWorld(w)
        up[x] |= 1 << y
    for k in range(size):
        bit = 1 << k
        for i in range(size):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(size):
        for j in range(i + 1, size):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise AntisymmetryViolation((i, j))
    return Frame(tuple(up))


def chain(n: int) -> Frame:
    """The n-world chain 0 < 1 < ... < n-1."""
    return make_frame(n, [(i, i + 1) for i in range(n - 1)])


def fork() -> Frame:
    """Three worlds with a root below two incomparable ones: 0 < 1, 0 < 2."""
    return make_frame(3, [(0, 1), (0, 2)])


def antichain(n: int) -> Frame:
    """n pairwise incomparable worlds."""
    return make_frame(n)


_ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Model:
    """A frame with a monotone valuation.

    The valuation is a sorted tuple of (atom, bitmask) pairs; every mask
    must be upward closed in the frame.  Atoms absent from the valuation
    are forced nowhere.  Use make_model to build one from plain sets.
    """

    frame: Frame
    valuation: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.valuation]
        if names != sorted(set(names)):
            raise InvalidModel("valuation atoms must be unique and sorted")
        full = self.frame.full_mask
        for name, mask in self.valuation:
            if not _ATOM_NAME.match(name) or name in ("T", "F"):
                raise InvalidModel(f"bad atom name {name!r}")
            if mask & ~full:
                raise InvalidModel(f"valuation of {name!r} mentions unknown worlds")
            _check_upward_closed(self.frame, mask, name)

    def atom_mask(self, name: str) -> int:
        for atom, mask in self.valuation:
            if atom == name:
                return mask
        return 0

    def valuation_dict(self) -> dict[str, frozenset[int]]:
        return {name: _mask_to_set(mask) for name, mask in self.valuation}


def _check_upward_closed(frame: Frame, mask: int, name: str) -> None:
    for x in _bits(mask):
        missing = frame.up[x] & ~mask
        if missing:
            y = _bits(missing)[0]
            raise InvalidModel(
                f"valuation of {name!r} is not upward closed: "
                f"world {x} <= {y} but {y} is not assigned"
            )


def make_model(frame: Frame, valuation: Mapping[str, Iterable[int]]) -> Model:
    """Build a Model from atom -> world-set, validating upward closure."""
    entries = []
    for name in sorted(valuation):
        mask = 0
        for w in valuation[name]:
            if not isinstance(w, int) or isinstance(w, bool) or not 0 <= w < frame.size:
                raise InvalidModel(f"valuation of {name!r} names unknown world {w!r}")
            mask |= 1 << w
        entries.append((name, mask))
    return Model(frame, tuple(entries))


@dataclass(frozen=True)
class Countermodel:
    """A model, a world in it, and a formula the world fails to force.

    Construction re-runs the forcing check, so a Countermodel that exists
    is always a genuine refutation.
    """

    model: Model
    world: int
    formula: Formula

    def __post_init__(self):
        if forces(self.model, self.world, self.formula):
            raise ValueError(
                f"world {self.world} forces {render(self.formula)}; not a countermodel"
            )


# Forcing is evaluated bottom-up over the distinct subterms, one world
# bitmask per subterm, which keeps exhaustive valuation search cheap.

def _compile(f: Formula, slot: Mapping[str, int]) -> list[tuple[str, int, int]]:
    prog: list[tuple[str, int, int]] = []
    index: dict[Formula, int] = {}

    def walk(g: Formula) -> int:
        if g in index:
            return index[g]
        if isinstance(g, Atom):
            node = ("atom", slot[g.name], 0)
        elif isinstance(g, Top):
            node = ("top", 0, 0)
        elif isinstance(g, Bottom):
            node = ("bot", 0, 0)
        else:
            a = walk(g.left)
            b = walk(g.right)
            if isinstance(g, And):
                node = ("and", a, b)
            elif isinstance(g, Or):
                node = ("or", a, b)
            else:
                node = ("imp", a, b)
        i = len(prog)
        prog.append(node)
        index[g] = i
        return i

    walk(f)
    return prog


def _eval(prog, up: tuple[int, ...], full: int, slots) -> int:
    n = len(up)
    regs: list[int] = []
    append = regs.append
    for op, a, b in prog:
        if op == "atom":
            append(slots[a])
        elif op == "imp":
            bad = regs[a] & ~regs[b] & full
            if bad:
                v = 0
                for x in range(n):
                    if not up[x] & bad:
                        v |= 1 << x
                append(v)
            else:
                append(full)
        elif op == "and":
            append(regs[a] & regs[b])
        elif op == "or":
            append(regs[a] | regs[b])
        elif op == "top":
            append(full)
        else:
            append(0)
    return regs[-1]


def _force_mask(model: Model, f: Formula) -> int:
    names = sorted(atoms(f))
    prog = _compile(f, {name: i for i, name in enumerate(names)})
    slots = [model.atom_mask(name) for name in names]
    return _eval(prog, model.frame.up, model.frame.full_mask, slots)


def forces(model: Model, x: int, f: Formula) -> bool:
    """Forcing at world x.

    Atoms hold by membership in the valuation, T always, F never, & and |
    pointwise, and A -> B holds at x iff every y >= x forcing A forces B.
    """
    if not 0 <= x < model.frame.size:
        raise UnknownWorld(x)
    return _force_mask(model, f) >> x & 1 == 1


def force_set(model: Model, f: Formula) -> frozenset[int]:
    """All worlds forcing f; upward closed for every legal model."""
    return _mask_to_set(_force_mask(model, f))


def frame_valid(fr: Frame, f: Formula) -> Countermodel | None:
    """Exhaustive search over monotone valuations of f's atoms.

    Each atom independently ranges over the frame's upsets (forcing only
    depends on atoms occurring in f).  Returns None when every world
    forces f under every such valuation, else the first countermodel in
    lexicographic order: upsets ascending per atom with the first atom
    most significant, then lowest world index.
    """
    names = sorted(atoms(f))
    prog = _compile(f, {name: i for i, name in enumerate(names)})
    ups = fr._upset_masks()
    up, full = fr.up, fr.full_mask
    for combo in product(ups, repeat=len(names)):
        got = _eval(prog, up, full, combo)
        if got != full:
            missing = ~got & full
            world = (missing & -missing).bit_length() - 1
            model = Model(fr, tuple(zip(names, combo)))
            return Countermodel(model, world, f)
    return None


def enumerate_frames(n: int, dedup: bool = False) -> Iterator[Frame]:
    """All partial orders on n labeled worlds, in a fixed order.

    With dedup=True only the first frame of each isomorphism class is
    yielded.  Frame validity and the built-in frame conditions are
    isomorphism-invariant, so dedup never changes an aggregate verdict.
    """
    if n < 1:
        raise ValueError("frame enumeration needs n >= 1")
    if not dedup:
        yield from _labeled_frames(n)
        return
    seen: set[tuple[int, ...]] = set()
    for fr in _labeled_frames(n):
        key = _canonical_key(fr)
        if key not in seen:
            seen.add(key)
            yield fr


def _labeled_frames(n: int) -> Iterator[Frame]:
    # Grow by one world: the new world gets a strict upper set U and a
    # strict lower set D; the extension is a partial order exactly when U
    # is an upset, D a downset, the two are disjoint, and every world of D
    # lies below every world of U already.
    if n == 1:
        yield Frame((1,))
        return
    new = n - 1
    new_bit = 1 << new
    for base in _labeled_frames(n - 1):
        downs = base._downset_masks()
        for upper in base._upset_masks():
            for lower in downs:
                if upper & lower:
                    continue
                if any(upper & ~base.up[d] for d in _bits(lower)):
                    continue
                rows = list(base.up)
                for d in _bits(lower):
                    rows[d] |= new_bit
                rows.append(upper | new_bit)
                yield Frame(tuple(rows))


def _canonical_key(fr: Frame) -> tuple[int, ...]:
    """Isomorphism-invariant key: minimal relabeled relation matrix.

    Worlds are first partitioned by an iterated up/down neighborhood
    profile; only permutations that respect the partition are tried.
    """
    n = fr.size
    up = fr.up
    down = fr._down_masks()
    inv = [0] * n
    for _ in range(n):
        sig = []
        for i in range(n):
            ups = tuple(sorted(inv[j] for j in _bits(up[i] & ~(1 << i))))
            downs = tuple(sorted(inv[j] for j in _bits(down[i] & ~(1 << i))))
            sig.append((inv[i], ups, downs))
        rank = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if new == inv:
            break
        inv = new
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(inv[i], []).append(i)
    blocks = [groups[k] for k in sorted(groups)]
    best: tuple[int, ...] | None = None
    for combo in product(*(permutations(block) for block in blocks)):
        order = [w for block in combo for w in block]
        pos = {w: i for i, w in enumerate(order)}
        rows = []
        for w in order:
            m = 0
            for v in _bits(up[w]):
                m |= 1 << pos[v]
            rows.append(m)
        key = tuple(rows)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


# JSON formats.  Frame: {"worlds": n, "le": [[i, j], ...]} with the pairs
# auto-closed on input and emitted as the full strict order.  Model adds
# {"valuation": {"p": [i, ...], ...}}; upward closure is validated, never
# repaired.

def frame_to_json(fr: Frame) -> dict:
    return {"worlds": fr.size, "le": [list(p) for p in fr.strict_pairs()]}


def frame_from_json(data: object) -> Frame:
    if not isinstance(data, dict):
        raise ValueError("frame JSON must be an object")
    worlds = data.get("worlds")
    if not isinstance(worlds, int) or isinstance(worlds, bool) or worlds < 1:
        raise ValueError('frame JSON needs a positive integer "worlds"')
    le = data.get("le", [])
    if not isinstance(le, list):
        raise ValueError('frame JSON "le" must be a list of world pairs')
    pairs = []
    for entry in le:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(w, int) and not isinstance(w, bool) for w in entry)
        ):
            raise ValueError(f"bad relation pair {entry!r}")
        pairs.append((entry[0], entry[1]))
    return make_frame(worlds, pairs)


def model_to_json(model: Model) -> dict:
    data = frame_to_json(model.frame)
    data["valuation"] = {
        name: sorted(worlds) for name, worlds in model.valuation_dict().items()
    }
    return data


def model_from_json(data: object) -> Model:
    frame = frame_from_json(data)
    valuation = data.get("valuation") if isinstance(data, dict) else None
    if not isinstance(valuation, dict):
        raise InvalidModel('model JSON needs a "valuation" object')
    cleaned: dict[str, list[int]] = {}
    for name, worlds in valuation.items():
        if not isinstance(worlds, list):
            raise InvalidModel(f"valuation of {name!r} must be a list of worlds")
        cleaned[name] = worlds
    return make_model(frame, cleaned)


def countermodel_to_json(cm: Countermodel) -> dict:
    data = model_to_json(cm.model)
    data["world"] = cm.world
    data["formula"] = render(cm.formula)
    return data


def to_dot(obj: Frame | Model, graph_name: str = "kripke") -> str:
    """Graphviz source: one node per world, one edge per covering pair.

    With a model, each node label lists the valuation's atoms; a '-'
    prefix strikes out the atoms the world does not force.
    """
    if isinstance(obj, Model):
        fr, model = obj.frame, obj
    else:
        fr, model = obj, None
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(fr.size):
        label = f"w{i}"
        if model is not None and model.valuation:
            marks = [
                name if mask >> i & 1 else "-" + name
                for name, mask in model.valuation
            ]
            label += ": " + " ".join(marks)
        lines.append(f'  w{i} [label="{label}"];')
    for i, j in fr.covers():
        lines.append(f"  w{i} -> w{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
