"""Regular embeddings of edge-colored graphs and semi-equivelar gems."""
from .core import Gem, build, canonical_form, isomorphic, load_gem, parse_gem
from .embedding import SeType, regular_embedding, semi_equivelar_type
from .topology import Surface, manifold_status, surface_of

__all__ = ["Gem", "build", "canonical_form", "isomorphic", "load_gem", "parse_gem", "SeType",
           "regular_embedding", "semi_equivelar_type", "Surface", "manifold_status", "surface_of"]
