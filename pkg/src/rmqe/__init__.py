"""First-order Routley-Meyer semantics for relevant logics."""

from .syntax import parse, to_text, free_vars, substitute
from .frames import Frame, check_condition, logic_profile, enumerate_frames
from .models import Model, evaluate, definable_set, representatives

__version__ = "0.1.0"

__all__ = [
    "parse", "to_text", "free_vars", "substitute",
    "Frame", "check_condition", "logic_profile", "enumerate_frames",
    "Model", "evaluate", "definable_set", "representatives",
]
