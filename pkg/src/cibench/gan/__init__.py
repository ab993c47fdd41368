"""Conditional tabular GAN oversampler built on small numpy MLPs."""

from .ctgan import (MAX_EPOCHS, GanConfig, GeneratorHandle, ctgan_augment,
                    fit_ctgan, sample)
from .mlp import (MLP, Adam, AdamState, adam_update, init_mlp, mlp_backward,
                  mlp_forward, mse_loss)

__all__ = [
    "MAX_EPOCHS", "GanConfig", "GeneratorHandle", "ctgan_augment",
    "fit_ctgan", "sample", "MLP", "Adam", "AdamState", "adam_update",
    "init_mlp", "mlp_backward", "mlp_forward", "mse_loss",
]
