"""Saliency-indexed compression defense: python bindings."""

from ._sad import (
    Image,
    Map,
    __version__,
    bit_depth_reduce,
    compress_uniform,
    deepfool,
    evaluate,
    fgsm,
    load_image,
    load_saliency_map,
    run_experiment,
    sad_clean,
    sad_quality_index,
    save_image,
    save_saliency_map,
    shield_clean,
    spectral_residual,
    train,
)

__all__ = [
    "Image",
    "Map",
    "__version__",
    "bit_depth_reduce",
    "compress_uniform",
    "deepfool",
    "evaluate",
    "fgsm",
    "load_image",
    "load_saliency_map",
    "run_experiment",
    "sad_clean",
    "sad_quality_index",
    "save_image",
    "save_saliency_map",
    "shield_clean",
    "spectral_residual",
    "train",
]
