"""Workbench for intuitionistic Kripke semantics and intermediate logics.

Finite frames, forcing, frame validity by exhaustive valuation search,
frame-condition correspondence sweeps, explicit witness countermodels,
and bounded validity decision for ipc, cpc, gl, bd2 and gl+bd2.
"""

from .formula import (
    And,
    Atom,
    Bottom,
    Formula,
    Imp,
    Not,
    Or,
    ParseError,
    Top,
    atoms,
    parse,
    render,
    subformulas,
    substitute,
)
from .kripke import (
    AntisymmetryViolation,
    Countermodel,
    Frame,
    InvalidModel,
    Model,
    UnknownWorld,
    antichain,
    chain,
    countermodel_to_json,
    enumerate_frames,
    force_set,
    forces,
    fork,
    frame_from_json,
    frame_to_json,
    frame_valid,
    make_frame,
    make_model,
    model_from_json,
    model_to_json,
    to_dot,
)
from .correspondence import (
    BD2_CHAIN,
    BD2_INSTANCE,
    BD2_PAPER,
    DISCRETE,
    GL_INSTANCE,
    LIN,
    CollapseReport,
    CorrespondenceReport,
    FrameCondition,
    PreconditionFailed,
    bd2_witness,
    check_correspondence,
    collapse_check,
    condition_from_name,
    cone_size_le,
    depth_le,
    eval_condition,
    gl_witness,
)
from .logics import (
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
    Decision,
    LogicSpec,
    Verdict,
    classical_taut,
    decide,
    get_logic,
    schema_instance,
)

__version__ = "0.1.0"
