import pytest

from kripkebench.formula import parse, render
from kripkebench.kripke import chain, enumerate_frames, frame_valid, make_frame
from kripkebench.correspondence import BD2_CHAIN, GL_INSTANCE, LIN, eval_condition
from kripkebench.logics import (
    BD2,
    BD2_SCHEMA,
    CPC,
    GL,
    GLBD2,
    GL_SCHEMA,
    INTERSECTION_WITNESS,
    IPC,
    LEM_SCHEMA,
    LOGICS,
    Verdict,
    classical_taut,
    decide,
    get_logic,
    schema_instance,
)

# tautology flag is the classical truth-table verdict
CORPUS = [
    ("p->p", True),
    ("p|~p", True),
    ("~~p->p", True),
    ("((p->q)->p)->p", True),  # by truth table: p=T gives T; p=F makes (p->q)->p false
    ("(p->q)|(q->p)", True),
    ("p|(p->(q|~q))", True),
    ("~~(p|~p)", True),
    ("(p->q)->(~q->~p)", True),
    ("(~q->~p)->(p->q)", True),
    ("p->(q->p)", True),
    ("(p->(q->r))->((p->q)->(p->r))", True),
    ("p&q->p", True),
    ("p->p|q", True),
    ("(p->r)->((q->r)->(p|q->r))", True),
    ("F->p", True),
    ("T", True),
    ("~(p&~p)", True),
    ("p->~~p", True),
    ("~~~p->~p", True),
    ("(p&(p->q))->q", True),
    ("((p|q)&~p)->q", True),
    ("~p|~~p", True),
    ("(p->q)|(p->~q)", True),
    ("p", False),
    ("~p", False),
    ("F", False),
    ("p->q", False),
    ("p|q", False),
    ("p&~p", False),
    ("(p->q)->(q->p)", False),
    ("~(p|q)", False),
    ("p->p&q", False),
    ("q->p&q", False),
    ("~~p->q", False),
    ("(p|~p)->F", False),
]


def test_registry_shape():
    assert set(LOGICS) == {"ipc", "cpc", "gl", "bd2", "gl+bd2"}
    assert IPC.axiom_schemas == ()
    assert IPC.exact_bound is None
    assert CPC.axiom_schemas == (LEM_SCHEMA,)
    assert CPC.exact_bound == 1
    assert GL.axiom_schemas == (GL_SCHEMA,)
    assert GL.exact_bound is None
    assert BD2.axiom_schemas == (BD2_SCHEMA,)
    assert BD2.exact_bound is None
    assert GLBD2.axiom_schemas == (GL_SCHEMA, BD2_SCHEMA)
    assert GLBD2.exact_bound == 2


def test_frame_classes():
    assert IPC.frame_class(chain(3))
    assert CPC.frame_class(make_frame(1)) and not CPC.frame_class(chain(2))
    assert GL.frame_class(chain(3)) and not GL.frame_class(make_frame(3, [(0, 1), (0, 2)]))
    assert BD2.frame_class(make_frame(3, [(0, 1), (0, 2)])) and not BD2.frame_class(chain(3))
    assert GLBD2.frame_class(chain(2)) and not GLBD2.frame_class(chain(3))


def test_get_logic():
    assert get_logic("GL") is GL
    assert get_logic("gl+bd2") is GLBD2
    with pytest.raises(ValueError):
        get_logic("modal")


def test_schema_instance():
    assert schema_instance(GL_SCHEMA) == parse("(p->q)|(q->p)")
    assert schema_instance(BD2_SCHEMA) == parse("p|(p->(q|~q))")
    assert schema_instance(LEM_SCHEMA, left="r") == parse("r|~r")
    assert render(schema_instance(GL_SCHEMA, "a", "b")) == "(a -> b) | (b -> a)"


def test_decide_cpc_excluded_middle():
    decision = decide(CPC, parse("p|~p"), 1)
    assert decision.verdict is Verdict.VALID
    assert decision.countermodel is None


def test_decide_ipc_refutes_excluded_middle():
    decision = decide(IPC, parse("p|~p"), 2)
    assert decision.verdict is Verdict.REFUTED
    cm = decision.countermodel
    assert cm.model.frame == chain(2)
    assert cm.world == 0
    assert cm.model.valuation_dict() == {"p": frozenset({1})}


def test_decide_gl_refutes_depth_schema_on_three_chain():
    decision = decide(GL, schema_instance(BD2_SCHEMA), 3)
    assert decision.verdict is Verdict.REFUTED
    fr = decision.countermodel.model.frame
    assert fr == chain(3)
    assert decision.countermodel.world == 0


def test_decide_bd2_refutes_linearity_schema_on_fork():
    decision = decide(BD2, schema_instance(GL_SCHEMA), 3)
    assert decision.verdict is Verdict.REFUTED
    fr = decision.countermodel.model.frame
    # the fork representative reached first in enumeration order has
    # its root labeled 2; the shape is what matters
    assert fr.size == 3 and fr.depth() == 2 and fr.width() == 2
    root = decision.countermodel.world
    assert all(fr.le(root, w) for w in range(3))


def test_decide_glbd2_still_refutes_excluded_middle():
    decision = decide(GLBD2, parse("p|~p"), 2)
    assert decision.verdict is Verdict.REFUTED
    assert decision.countermodel.model.frame == chain(2)


def test_decide_glbd2_valid_needs_covered_bound():
    decision = decide(GLBD2, parse("~~(p|~p)"), 2)
    assert decision.verdict is Verdict.VALID
    assert decision.bound == 2
    # bound below the completeness bound stays inconclusive
    low = decide(GLBD2, parse("~~(p|~p)"), 1)
    assert low.verdict is Verdict.NO_COUNTERMODEL
    assert low.bound == 1


def test_decide_glbd2_refutes_double_negation_elimination():
    # the two-world chain is in the class and refutes ~~(p|~p) -> (p|~p)
    decision = decide(GLBD2, parse("~~(p|~p)->(p|~p)"), 2)
    assert decision.verdict is Verdict.REFUTED
    assert decision.countermodel.model.frame == chain(2)


def test_decide_ipc_never_claims_valid():
    decision = decide(IPC, parse("~~(p|~p)"), 5)
    assert decision.verdict is Verdict.NO_COUNTERMODEL
    assert decision.bound == 5
    assert decide(IPC, parse("p->p"), 3).verdict is Verdict.NO_COUNTERMODEL


def test_decide_rejects_bad_bound():
    with pytest.raises(ValueError):
        decide(IPC, parse("p"), 0)


def test_decision_json():
    decision = decide(IPC, parse("p|~p"), 2)
    data = decision.to_json()
    assert data["verdict"] == "refuted"
    assert data["countermodel"]["world"] == 0
    valid = decide(CPC, parse("p|~p"), 1).to_json()
    assert valid == {"verdict": "valid", "bound": 1}


def test_classical_taut_examples():
    assert classical_taut(parse("p|~p")) is True
    assert classical_taut(parse("p")) is False
    assert classical_taut(parse("((p->q)->p)->p")) is True
    assert classical_taut(parse("T")) is True
    assert classical_taut(parse("F")) is False


def test_classical_taut_matches_corpus_flags():
    for text, expected in CORPUS:
        assert classical_taut(parse(text)) is expected, text


def test_classical_taut_agrees_with_single_world_validity():
    assert len(CORPUS) >= 30
    trivial = make_frame(1)
    for text, _ in CORPUS:
        f = parse(text)
        assert classical_taut(f) == (frame_valid(trivial, f) is None), text


def test_peirce_classical_but_refutable():
    peirce = parse("((p->q)->p)->p")
    assert classical_taut(peirce) is True
    assert decide(IPC, peirce, 3).verdict is Verdict.REFUTED


def test_schemas_sound_over_their_classes():
    pairs = [("p", "p"), ("p", "q"), ("q", "p"), ("q", "q")]
    for n in range(1, 5):
        for fr in enumerate_frames(n, dedup=True):
            for a, b in pairs:
                if GL.frame_class(fr):
                    assert frame_valid(fr, schema_instance(GL_SCHEMA, a, b)) is None
                if BD2.frame_class(fr):
                    assert frame_valid(fr, schema_instance(BD2_SCHEMA, a, b)) is None
                if GLBD2.frame_class(fr):
                    for schema in GLBD2.axiom_schemas:
                        assert frame_valid(fr, schema_instance(schema, a, b)) is None
                if CPC.frame_class(fr):
                    assert frame_valid(fr, schema_instance(LEM_SCHEMA, a, b)) is None


def test_restricted_refutations_are_ipc_refutations():
    # a countermodel inside a restricted class is an unrestricted one too
    for text, _ in CORPUS:
        f = parse(text)
        ipc = decide(IPC, f, 3)
        for logic in (GL, BD2, GLBD2):
            restricted = decide(logic, f, 3)
            if restricted.verdict is Verdict.REFUTED:
                assert ipc.verdict is Verdict.REFUTED, text


def test_single_world_refutation_carries_to_glbd2():
    # the class of gl+bd2 contains the one-world frame
    for text, _ in CORPUS:
        f = parse(text)
        if decide(CPC, f, 1).verdict is Verdict.REFUTED:
            assert decide(GLBD2, f, 2).verdict is Verdict.REFUTED, text


def test_intersection_witness():
    assert INTERSECTION_WITNESS == schema_instance(GL_SCHEMA)
    assert INTERSECTION_WITNESS == GL_INSTANCE
    # valid on every frame of the combined class at its completeness bound
    assert decide(GLBD2, INTERSECTION_WITNESS, 2).verdict is Verdict.VALID
    # yet refutable on a plain intuitionistic frame
    fr = make_frame(3, [(0, 1), (0, 2)])
    assert frame_valid(fr, INTERSECTION_WITNESS) is not None


def test_logic_classes_use_conditions():
    for n in (1, 2, 3):
        for fr in enumerate_frames(n):
            assert GL.frame_class(fr) == eval_condition(LIN, fr)
            assert BD2.frame_class(fr) == eval_condition(BD2_CHAIN, fr)
            assert GLBD2.frame_class(fr) == (
                eval_condition(LIN, fr) and eval_condition(BD2_CHAIN, fr)
            )
