from .syntax import *  # noqa: F401,F403
from .syntax import KnowledgeBase, Signature
from .parser import parse_kb, serialize_kb, parse_axiom, ser_axiom, ser_concept
from .language import enumerate_language, admits, infer_language, nf_shape, canonical_tag
from .normalize import normalize, is_normal
from .interp import FiniteInterpretation, classical_satisfies, is_classical_model
from .transform import abox_to_tbox, assertion_to_nominal
