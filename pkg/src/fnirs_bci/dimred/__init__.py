"""Dimensionality reduction: kernel PCA and ICA."""

from .ica import (
    IcaModel,
    amari_index,
    component_names,
    epoch_time_steps,
    ica_fit,
    ica_fit_epochs,
    ica_reduce_epochs,
    ica_transform,
    symmetric_decorrelation,
    whiten,
)
from .kpca import Kernel, KpcaModel, default_gamma, kpca_fit, kpca_fit_transform, kpca_transform

__all__ = [
    "Kernel",
    "KpcaModel",
    "default_gamma",
    "kpca_fit",
    "kpca_transform",
    "kpca_fit_transform",
    "IcaModel",
    "whiten",
    "symmetric_decorrelation",
    "ica_fit",
    "ica_transform",
    "amari_index",
    "epoch_time_steps",
    "component_names",
    "ica_fit_epochs",
    "ica_reduce_epochs",
]
