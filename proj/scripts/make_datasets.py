#!/usr/bin/env python3
"""Regenerates the committed CSV datasets under data/.

- cancer.csv: scikit-learn breast-cancer set (569 x 30, label 1 = malignant
  remapped so the minority class is positive as in the accuracy tables).
- digits.csv: scikit-learn 8x8 handwritten digits filtered to {8, 9},
  relabeled 8 -> 0, 9 -> 1.
- pulsar.csv: offline stand-in for the HTRU2 pulsar survey (17898 x 8, 1639
  positives ~ 9.16%). Rows are sampled from a real image manifold (the
  bundled handwritten-digit set, one digit class as the rare positive) via
  pixel jitter and circular shifts, then summarized by 8 HTRU2-style
  statistics: four distributional moments of the row-sum "pulse profile"
  (centroid, width, skewness, kurtosis over position) and four moments of
  the pixel-intensity distribution. Real manifold structure keeps the
  optimization landscape rugged the way survey data is, which is what the
  ensemble comparisons in the accompanying experiments are sensitive to.

Run from the repository root:  python3 scripts/make_datasets.py
"""

import pathlib

import numpy as np
from sklearn.datasets import load_breast_cancer, load_digits

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"

PULSAR_SEED = 20260823
PULSAR_ROWS = 17898
PULSAR_POSITIVES = 1639
PULSAR_POSITIVE_DIGIT = 3
PULSAR_PIXEL_NOISE = 0.10
PULSAR_SHIFT_MAX = 2  # max |pixels| of circular shift per axis
PULSAR_GAMMA_RANGE = (0.7, 1.4)
PULSAR_BRIGHTNESS_RANGE = (0.7, 1.3)
PULSAR_DROPOUT_RATE = 0.10


def write_csv(path, features, labels, prefix):
    n = features.shape[1]
    header = ",".join(f"{prefix}{i}" for i in range(n)) + ",label"
    data = np.column_stack([features, labels])
    fmt = ["%.17g"] * n + ["%d"]
    np.savetxt(path, data, fmt=fmt, delimiter=",", header=header, comments="")
    print(f"wrote {path} ({features.shape[0]} x {n})")


def make_cancer():
    bunch = load_breast_cancer()
    # sklearn labels malignant = 0; flip so the clinically positive class is 1.
    labels = 1 - bunch.target
    write_csv(OUT / "cancer.csv", bunch.data, labels, "f")


def make_digits():
    bunch = load_digits()
    mask = (bunch.target == 8) | (bunch.target == 9)
    features = bunch.data[mask]
    labels = (bunch.target[mask] == 9).astype(int)
    write_csv(OUT / "digits.csv", features, labels, "p")


def distribution_moments(weights):
    """Centroid, width, skewness, kurtosis of mass over position (per row)."""
    m, n = weights.shape
    pos = np.arange(n)
    total = weights.sum(axis=1, keepdims=True)
    total = np.where(np.abs(total) < 1e-9, 1e-9, total)
    p = weights / total
    mu = p @ pos
    centered = pos[None, :] - mu[:, None]
    var = np.maximum((p * centered**2).sum(axis=1), 1e-9)
    sd = np.sqrt(var)
    skew = (p * centered**3).sum(axis=1) / sd**3
    kurt = (p * centered**4).sum(axis=1) / var**2
    return np.stack([mu, sd, skew, kurt], axis=1)


def value_moments(values):
    """Mean, spread, skewness, kurtosis of the value distribution (per row)."""
    mu = values.mean(axis=1)
    sd = np.maximum(values.std(axis=1), 1e-9)
    z = (values - mu[:, None]) / sd[:, None]
    return np.stack([mu, sd, (z**3).mean(axis=1), (z**4).mean(axis=1)], axis=1)


def synthesize_rows(rng, pool, count):
    """Jittered draws from the image pool, summarized by 8 profile statistics."""
    images = pool[rng.integers(pool.shape[0], size=count)].reshape(count, 8, 8)

    shifts = rng.integers(-PULSAR_SHIFT_MAX, PULSAR_SHIFT_MAX + 1, size=(count, 2))
    for axis in (0, 1):
        for s in range(-PULSAR_SHIFT_MAX, PULSAR_SHIFT_MAX + 1):
            if s == 0:
                continue
            sel = shifts[:, axis] == s
            images[sel] = np.roll(images[sel], s, axis=axis + 1)

    gamma = rng.uniform(*PULSAR_GAMMA_RANGE, size=(count, 1, 1))
    brightness = rng.uniform(*PULSAR_BRIGHTNESS_RANGE, size=(count, 1, 1))
    images = brightness * np.clip(images, 0.0, 1.0) ** gamma

    keep = rng.random(size=images.shape) >= PULSAR_DROPOUT_RATE
    images = images * keep

    images = images + rng.normal(scale=PULSAR_PIXEL_NOISE, size=images.shape)
    images = np.clip(images, 0.0, None)

    profile = images.sum(axis=2)  # row-sum "pulse profile", position-sensitive
    return np.hstack([distribution_moments(profile), value_moments(images.reshape(count, 64))])


def make_pulsar():
    rng = np.random.default_rng(PULSAR_SEED)
    bunch = load_digits()
    images = bunch.data / 16.0

    positives_pool = images[bunch.target == PULSAR_POSITIVE_DIGIT]
    negatives_pool = images[bunch.target != PULSAR_POSITIVE_DIGIT]

    n_neg = PULSAR_ROWS - PULSAR_POSITIVES
    neg = synthesize_rows(rng, negatives_pool, n_neg)
    pos = synthesize_rows(rng, positives_pool, PULSAR_POSITIVES)

    features = np.vstack([neg, pos])
    labels = np.array([0] * n_neg + [1] * PULSAR_POSITIVES)

    order = rng.permutation(PULSAR_ROWS)
    write_csv(OUT / "pulsar.csv", features[order], labels[order], "f")


def main():
    OUT.mkdir(exist_ok=True)
    make_cancer()
    make_digits()
    make_pulsar()


if __name__ == "__main__":
    main()
