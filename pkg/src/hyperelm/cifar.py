"""CIFAR-10 ingestion, pixel encodings, PSNR/SSIM, and the auto-encoding
benchmark.

Images are 32x32 8-bit RGB.  The real encoding concatenates the rescaled
R, G, B planes into a row of 3072 coefficients; the four-dimensional encoding
packs each pixel's three channels onto the imaginary units of a single entry,
leaving the real part zero.  Auto-encoders are ELMs trained with targets equal
to inputs, scored on decoded 8-bit images.
"""
from __future__ import annotations

import math
import os
import time
import zlib
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import gaussian_filter
from scipy.signal import convolve2d

from .catalog import builtin, resolve_name
from .elm import HyperELM
from .errors import FormatError, WrongAlgebraDimError
from .realify import HMatrix
from .reporting import TrialRecord

RECORD_BYTES = 3073  # 1 label byte + 3 row-major 1024-byte channel planes
IMAGE_SHAPE = (32, 32, 3)


# -- binary batch files -----------------------------------------------------

def load_cifar_batch(path):
    """Images from a CIFAR-10 binary batch file as a (N, 32, 32, 3) uint8
    array; labels are discarded."""
    raw = np.fromfile(path, dtype=np.uint8)
    if raw.size == 0 or raw.size % RECORD_BYTES != 0:
        raise FormatError(
            f"{path}: {raw.size} bytes is not a whole number of "
            f"{RECORD_BYTES}-byte records"
        )
    records = raw.reshape(-1, RECORD_BYTES)
    planes = records[:, 1:].reshape(-1, 3, 32, 32)
    return np.ascontiguousarray(planes.transpose(0, 2, 3, 1))


def write_cifar_batch(path, images, labels=None):
    """Write images in the CIFAR-10 binary batch layout."""
    images = np.asarray(images, dtype=np.uint8)
    n = len(images)
    if labels is None:
        labels = np.zeros(n, dtype=np.uint8)
    records = np.empty((n, RECORD_BYTES), dtype=np.uint8)
    records[:, 0] = labels
    records[:, 1:] = images.transpose(0, 3, 1, 2).reshape(n, 3072)
    records.tofile(path)


def synthetic_images(count, seed=0):
    """Deterministic stand-in corpus of smooth, channel-correlated images.

    Each image is a low-frequency luminance field plus weaker per-channel
    tint fields, stretched to the full byte range.  Used when no CIFAR batch
    files are available.
    """
    rng = np.random.default_rng(seed)
    images = np.empty((count,) + IMAGE_SHAPE, dtype=np.uint8)
    for idx in range(count):
        base = gaussian_filter(rng.standard_normal((32, 32)), sigma=3.0)
        img = np.empty((32, 32, 3))
        for ch in range(3):
            tint = gaussian_filter(rng.standard_normal((32, 32)), sigma=2.0)
            img[:, :, ch] = base + 0.4 * tint
        lo, hi = img.min(), img.max()
        images[idx] = np.floor(255.0 * (img - lo) / (hi - lo) + 0.5).astype(np.uint8)
    return images


# -- encodings --------------------------------------------------------------

def _rescale(bytes_):
    return 2.0 * bytes_.astype(float) / 255.0 - 1.0


def encode_real(images, algebra=None) -> HMatrix:
    """Rows of 3072 coefficients in [-1, 1]: R plane, then G, then B."""
    if algebra is None:
        algebra = builtin("real")
    images = np.atleast_1d(np.asarray(images, dtype=np.uint8))
    if images.ndim == 3:
        images = images[None]
    planes = _rescale(images.transpose(0, 3, 1, 2).reshape(len(images), 3072))
    return HMatrix(algebra, planes[:, :, None])


def encode_hyper(images, algebra) -> HMatrix:
    """Rows of 1024 entries; pixel channels on the imaginary units, real part
    zero, all coefficients in [-1, 1]."""
    if algebra.dim != 4:
        raise WrongAlgebraDimError(f"pixel encoding needs dim 4, got {algebra.dim}")
    images = np.asarray(images, dtype=np.uint8)
    if images.ndim == 3:
        images = images[None]
    coeffs = np.zeros((len(images), 1024, 4))
    coeffs[:, :, 1:] = _rescale(images.reshape(len(images), 1024, 3))
    return HMatrix(algebra, coeffs)


def _to_bytes(values):
    # Clamp to [0, 255] after inverting the affine map, then round half up.
    scaled = 255.0 * (np.asarray(values) + 1.0) / 2.0
    return np.floor(np.clip(scaled, 0.0, 255.0) + 0.5).astype(np.uint8)


def decode_real(X: HMatrix):
    """Invert :func:`encode_real` into (N, 32, 32, 3) uint8 images."""
    planes = _to_bytes(X.coeffs[:, :, 0])
    return np.ascontiguousarray(
        planes.reshape(-1, 3, 32, 32).transpose(0, 2, 3, 1)
    )


def decode_hyper(X: HMatrix):
    """Invert :func:`encode_hyper`; the real coefficient is ignored."""
    return _to_bytes(X.coeffs[:, :, 1:]).reshape(-1, 32, 32, 3)


# -- quality metrics --------------------------------------------------------

def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB over 8-bit values; +inf when equal."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise FormatError(f"image shapes differ: {a.shape} vs {b.shape}")
    mse = np.mean((a - b) ** 2)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def _gaussian_window(size=11, sigma=1.5):
    offsets = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-(offsets**2) / (2.0 * sigma**2))
    window = np.outer(g, g)
    return window / window.sum()


_SSIM_WINDOW = _gaussian_window()
_SSIM_C1 = (0.01 * 255.0) ** 2
_SSIM_C2 = (0.03 * 255.0) ** 2


def _ssim_channel(a, b):
    w = _SSIM_WINDOW
    mu_a = convolve2d(a, w, mode="valid")
    mu_b = convolve2d(b, w, mode="valid")
    var_a = convolve2d(a * a, w, mode="valid") - mu_a**2
    var_b = convolve2d(b * b, w, mode="valid") - mu_b**2
    cov = convolve2d(a * b, w, mode="valid") - mu_a * mu_b
    num = (2 * mu_a * mu_b + _SSIM_C1) * (2 * cov + _SSIM_C2)
    den = (mu_a**2 + mu_b**2 + _SSIM_C1) * (var_a + var_b + _SSIM_C2)
    return float(np.mean(num / den))


def ssim(a, b) -> float:
    """Structural similarity with the canonical parameters: 11x11 Gaussian
    window (sigma 1.5), K1=0.01, K2=0.03, dynamic range 255, valid windows
    only, averaged over channels."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise FormatError(f"image shapes differ: {a.shape} vs {b.shape}")
    if a.ndim == 2:
        return _ssim_channel(a, b)
    return float(
        np.mean([_ssim_channel(a[..., ch], b[..., ch]) for ch in range(a.shape[-1])])
    )


# -- benchmark --------------------------------------------------------------

def autoencoder_tnp(input_dim, hidden_neurons, algebra_dim=1):
    """Parameter count used for size matching: twice input-times-hidden
    (symmetric encoder/decoder, biases not counted), times the algebra
    dimension."""
    return algebra_dim * 2 * input_dim * hidden_neurons


@dataclass
class AutoencoderExperimentConfig:
    algebras: tuple = ("real", "quaternion", "cd_pp", "cd_mp", "cd_pm",
                       "clifford_1_1", "tessarine", "klein4")
    l_real: int = 600
    l_hyper: int = 450
    alpha_real: float = 30.0 / 3072.0
    alpha_hyper: float = 10.0 / 1024.0
    trials: int = 1
    seed_base: int = 7
    subset: int | None = None


def _mean_std(scores):
    arr = np.asarray(scores, dtype=float)
    if np.all(np.isfinite(arr)):
        std = float(np.std(arr, ddof=1)) if len(arr) > 1 else 0.0
        return float(np.mean(arr)), std
    # Byte-exact reconstructions score +inf; the mean inherits the sentinel
    # and the spread is zero only when every image is perfect.
    return math.inf, 0.0 if np.all(np.isinf(arr)) else math.inf


def _batch_metrics(original, decoded):
    psnr_mean, psnr_std = _mean_std([psnr(o, d) for o, d in zip(original, decoded)])
    ssim_mean, ssim_std = _mean_std([ssim(o, d) for o, d in zip(original, decoded)])
    return {
        "psnr_mean": psnr_mean,
        "psnr_std": psnr_std,
        "ssim_mean": ssim_mean,
        "ssim_std": ssim_std,
    }


def run_autoencoder_experiment(train_images, test_images, cfg, dump_dir=None):
    """Train one auto-encoder per (algebra, trial) and score both splits.

    Returns two TrialRecords (train/test split) per trained model.  When
    ``dump_dir`` is set, a few decoded test images are written there as PNGs
    for eyeballing.
    """
    if cfg.subset is not None:
        train_images = train_images[: cfg.subset]
        test_images = test_images[: cfg.subset]
    names = [resolve_name(a) for a in cfg.algebras]
    real_alg = builtin("real")
    X_real = {"train": encode_real(train_images, real_alg),
              "test": encode_real(test_images, real_alg)}
    originals = {"train": train_images, "test": test_images}
    records = []
    for name in names:
        algebra = builtin(name)
        if algebra.dim == 1:
            encoded = X_real
            hidden, alpha = cfg.l_real, cfg.alpha_real
            model_tnp = autoencoder_tnp(3072, hidden)
            decode = decode_real
        else:
            encoded = {"train": encode_hyper(train_images, algebra),
                       "test": encode_hyper(test_images, algebra)}
            hidden, alpha = cfg.l_hyper, cfg.alpha_hyper
            model_tnp = autoencoder_tnp(1024, hidden, algebra.dim)
            decode = decode_hyper
        for trial in range(cfg.trials):
            tag = zlib.crc32(name.encode())
            seed = int(
                np.random.SeedSequence([cfg.seed_base, tag, trial]).generate_state(1)[0]
            )
            model = HyperELM(algebra, hidden, alpha=alpha, seed=seed)
            start = time.perf_counter()
            model.fit(encoded["train"], encoded["train"])
            train_ms = 1000.0 * (time.perf_counter() - start)
            for split in ("train", "test"):
                decoded = decode(model.predict(encoded[split]))
                if dump_dir is not None and trial == 0 and split == "test":
                    _dump_images(dump_dir, name, originals[split], decoded)
                records.append(
                    TrialRecord(
                        algebra=name,
                        layers={"L": hidden},
                        tnp=model_tnp,
                        seed=seed,
                        metrics=_batch_metrics(originals[split], decoded),
                        train_ms=train_ms,
                        split=split,
                    )
                )
    return records


def _dump_images(dump_dir, name, originals, decoded, count=4):
    from PIL import Image

    os.makedirs(dump_dir, exist_ok=True)
    for idx in range(min(count, len(decoded))):
        Image.fromarray(originals[idx]).save(
            os.path.join(dump_dir, f"{idx:03d}_original.png")
        )
        Image.fromarray(decoded[idx]).save(
            os.path.join(dump_dir, f"{idx:03d}_{name}.png")
        )
