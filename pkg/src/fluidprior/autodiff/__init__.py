"""
Minimal reverse-mode automatic differentiation over float64 tensors.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["Tensor", "Graph", "backward", "active_graph", "as_tensor",
           "Module", "Linear", "Conv2d", "ConvTranspose2d", "BatchNorm", "Sequential",
           "AdamState", "Adam", "adam_step", "gradient_check", "GradientCheckReport",
           "save_checkpoint", "load_checkpoint", "ops"]

from .tensor import Tensor, Graph, backward, active_graph, as_tensor
from .layers import Module, Linear, Conv2d, ConvTranspose2d, BatchNorm, Sequential
from .optim import AdamState, Adam, adam_step
from .gradcheck import gradient_check, GradientCheckReport
from .checkpoint import save_checkpoint, load_checkpoint
from . import ops
