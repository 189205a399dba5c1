"""Model resolution and feature-tap selection.

Features default to the model's pre-classifier "flatten" node (the pooled
trunk output); any graph node can be requested instead. Dual-encoder or
exotic architectures should pass an explicit node name.
"""

from __future__ import annotations

from pathlib import Path

import torch
from torchvision.models import get_model, list_models
from torchvision.models.feature_extraction import (
    create_feature_extractor,
    get_graph_node_names,
)

from .errors import InvalidJob, ModelNotFound

FEATURE_KEY = "feat"


def resolve_model(name: str, weights: str, device: str) -> torch.nn.Module:
    """Instantiate a zoo model in eval mode, optionally loading weights.

    weights: "none", "default" (zoo pretrained), or a checkpoint path
    holding a state_dict (or {"state_dict": ...}).
    """
    if name not in list_models():
        raise ModelNotFound(f"unknown model {name!r}; see torchvision list_models()")
    try:
        model = get_model(name, weights="DEFAULT" if weights == "default" else None)
    except Exception as e:  # zoo download failure, bad weights enum
        raise ModelNotFound(f"could not instantiate {name!r}: {e}") from e
    if weights not in ("none", "default"):
        ckpt = Path(weights)
        if not ckpt.is_file():
            raise ModelNotFound(f"checkpoint not found: {ckpt}")
        state = torch.load(ckpt, map_location="cpu", weights_only=True)
        if isinstance(state, dict) and "state_dict" in state:
            state = state["state_dict"]
        model.load_state_dict(state)
    return model.to(device).eval()


def build_feature_extractor(model: torch.nn.Module, layer: str):
    """Wrap the model so forward() returns {FEATURE_KEY: features}.

    Returns (extractor, resolved_layer_name).
    """
    _, eval_nodes = get_graph_node_names(model)
    if layer == "default":
        if "flatten" in eval_nodes:
            resolved = "flatten"
        else:
            # no canonical pooled node: take the input to the final op
            resolved = eval_nodes[-2]
    else:
        if layer not in eval_nodes:
            raise InvalidJob(
                f"layer {layer!r} not in this model's graph; "
                f"candidates end with {eval_nodes[-5:]}"
            )
        resolved = layer
    return create_feature_extractor(model, return_nodes={resolved: FEATURE_KEY}), resolved
