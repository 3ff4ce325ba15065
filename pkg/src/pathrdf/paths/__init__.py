from .ast import (
    CPSPARQL,
    CPSPARQL_FULL,
    NSPARQL,
    PSPARQL,
    Alt,
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    ConstraintTriple,
    DialectError,
    Epsilon,
    NegAtom,
    PathExpr,
    Plus,
    Seq,
    Star,
    VarAtom,
    check_dialect,
    dialect_of,
    format_path,
    is_cpsparql,
    terms_of,
)
from .evaluate import Evaluator, constraint_sat, eval_all_pairs, eval_pair, label
from .nfa import NFA, build_nfa
from .semantics import denot_eval, denot_pairs
