"""Registry of the five logics and bounded validity decision.

Each logic is the base intuitionistic consequence plus zero or more axiom
schemas, matched with the class of frames on which the schemas are valid.
Deciding validity searches the class for a countermodel up to a frame
size bound; the verdict Valid is only ever issued when the class carries
an exact completeness bound covered by the search.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .formula import And, Atom, Bottom, Formula, Imp, Not, Or, Top, atoms, substitute
from .kripke import Countermodel, Frame, countermodel_to_json, enumerate_frames, frame_valid
from .correspondence import BD2_CHAIN, LIN, eval_condition

_A, _B = Atom("A"), Atom("B")

# Axiom schemas over the placeholders A and B.
LEM_SCHEMA = Or(_A, Not(_A))
GL_SCHEMA = Or(Imp(_A, _B), Imp(_B, _A))
BD2_SCHEMA = Or(_A, Imp(_A, Or(_B, Not(_B))))


def schema_instance(schema: Formula, left: str = "p", right: str = "q") -> Formula:
    """Instantiate a schema's placeholders A and B with atoms."""
    return substitute(schema, {"A": Atom(left), "B": Atom(right)})


# Valid on every frame whose cones have at most two worlds, yet refutable
# on the three-world fork: the combined class validates formulas beyond
# the base logic even though neither restriction contains the other.
INTERSECTION_WITNESS = schema_instance(GL_SCHEMA)


def _every_frame(fr: Frame) -> bool:
    return True


def _trivial_frame(fr: Frame) -> bool:
    return fr.size == 1


def _locally_linear(fr: Frame) -> bool:
    return eval_condition(LIN, fr)


def _no_three_chain(fr: Frame) -> bool:
    return eval_condition(BD2_CHAIN, fr)


def _linear_and_shallow(fr: Frame) -> bool:
    return eval_condition(LIN, fr) and eval_condition(BD2_CHAIN, fr)


@dataclass(frozen=True)
class LogicSpec:
    """A logic given by its extra schemas and its class of frames.

    exact_bound, when set, is a frame size at which countermodel search
    over the class is complete: no countermodel up to that size means
    the formula is valid in the logic.
    """

    name: str
    axiom_schemas: tuple[Formula, ...]
    frame_class: Callable[[Frame], bool]
    exact_bound: int | None = None


IPC = LogicSpec("ipc", (), _every_frame)
CPC = LogicSpec("cpc", (LEM_SCHEMA,), _trivial_frame, exact_bound=1)
GL = LogicSpec("gl", (GL_SCHEMA,), _locally_linear)
BD2 = LogicSpec("bd2", (BD2_SCHEMA,), _no_three_chain)
GLBD2 = LogicSpec("gl+bd2", (GL_SCHEMA, BD2_SCHEMA), _linear_and_shallow, exact_bound=2)

LOGICS = {logic.name: logic for logic in (IPC, CPC, GL, BD2, GLBD2)}


def get_logic(name: str) -> LogicSpec:
    try:
        return LOGICS[name.lower()]
    except KeyError:
        raise ValueError(
            f"unknown logic {name!r} (choose from {', '.join(sorted(LOGICS))})"
        ) from None


class Verdict(enum.Enum):
    VALID = "valid"
    REFUTED = "refuted"
    NO_COUNTERMODEL = "no-countermodel"


@dataclass(frozen=True)
class Decision:
    """Outcome of a bounded search: the verdict, the frame size the search
    covered, and the countermodel when one was found."""

    verdict: Verdict
    bound: int
    countermodel: Countermodel | None = None

    def to_json(self) -> dict:
        data: dict = {"verdict": self.verdict.value, "bound": self.bound}
        if self.countermodel is not None:
            data["countermodel"] = countermodel_to_json(self.countermodel)
        return data


def decide(logic: LogicSpec, f: Formula, bound: int) -> Decision:
    """Search the logic's frame class for a countermodel to f.

    Frames are enumerated by size, one representative per isomorphism
    class (validity is isomorphism-invariant), and filtered through the
    class predicate.  Refuted carries the minimal countermodel; Valid is
    returned only when the class's exact completeness bound was covered;
    otherwise the search was merely exhaustive up to the bound.
    """
    if bound < 1:
        raise ValueError("decide needs bound >= 1")
    limit = bound if logic.exact_bound is None else min(bound, logic.exact_bound)
    for n in range(1, limit + 1):
        for fr in enumerate_frames(n, dedup=True):
            if not logic.frame_class(fr):
                continue
            cm = frame_valid(fr, f)
            if cm is not None:
                return Decision(Verdict.REFUTED, n, cm)
    if logic.exact_bound is not None and logic.exact_bound <= bound:
        return Decision(Verdict.VALID, limit)
    return Decision(Verdict.NO_COUNTERMODEL, bound)


def classical_taut(f: Formula) -> bool:
    """Two-valued truth-table check over the atoms of f."""
    names = sorted(atoms(f))
    for bits in product((False, True), repeat=len(names)):
        if not _truth(f, dict(zip(names, bits))):
            return False
    return True


def _truth(f: Formula, env: dict[str, bool]) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, And):
        return _truth(f.left, env) and _truth(f.right, env)
    if isinstance(f, Or):
        return _truth(f.left, env) or _truth(f.right, env)
    return not _truth(f.left, env) or _truth(f.right, env)
