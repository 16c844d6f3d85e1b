"""Embeddings and the per-method satisfaction relations."""
from ..geometry import Verdict
from .embedding import (
    METHOD_LANGUAGE, METHODS, NOMINAL_METHODS, Embedding, dumps_embedding, embedding_from_dict,
    embedding_to_dict, load_embedding, loads_embedding,
)
from .loss import elem_loss
from .satisfy import *  # noqa: F401,F403
from .satisfy import is_model, satisfies, violated
