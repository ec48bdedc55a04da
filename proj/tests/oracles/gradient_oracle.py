#!/usr/bin/env python3
# Copyright (c) 2026 The Dam Burst Authors. Licensed under the Apache License, Version 2.0.
#
# Brute-force reference for the pinned gradient values in the test suite.
# Plain loops over numpy slices: no integral images, no shared code with the
# C++ implementation. Run: python3 tests/oracles/gradient_oracle.py

import numpy as np


def texture_scene(w, h, period, amplitude):
    split = w // 2
    img = np.zeros((h, w))
    img[:, :split] = min(255.0, 40 + amplitude / 2 + 100)
    y, x = np.mgrid[0:h, 0:w - split]
    img[:, split:] = np.where(((x // period) + (y // period)) % 2 == 1, 40 + amplitude, 40)
    return img, split


def step_scene(w, h, lo, hi):
    img = np.full((h, w), float(lo))
    img[:, w // 2:] = hi
    return img


def sobel(f):
    p = np.pad(f, 1, mode="edge")
    gx = ((p[:-2, 2:] - p[:-2, :-2]) + 2 * (p[1:-1, 2:] - p[1:-1, :-2]) + (p[2:, 2:] - p[2:, :-2])) / 4
    gy = ((p[2:, :-2] - p[:-2, :-2]) + 2 * (p[2:, 1:-1] - p[:-2, 1:-1]) + (p[2:, 2:] - p[:-2, 2:])) / 4
    return np.hypot(gx, gy)


def haar(f, w):
    H, W = f.shape
    h = w // 2
    gx = np.zeros_like(f)
    gy = np.zeros_like(f)
    for y in range(H):
        for x in range(W):
            r0, r1 = max(0, y - h), min(H - 1, y + h)
            left = f[r0:r1 + 1, max(0, x - w):x]
            right = f[r0:r1 + 1, x + 1:min(W, x + w + 1)]
            if left.size == 0:
                left = f[r0:r1 + 1, x:x + 1]
            if right.size == 0:
                right = f[r0:r1 + 1, x:x + 1]
            gx[y, x] = right.mean() - left.mean()
            c0, c1 = max(0, x - h), min(W - 1, x + h)
            top = f[max(0, y - w):y, c0:c1 + 1]
            bottom = f[y + 1:min(H, y + w + 1), c0:c1 + 1]
            if top.size == 0:
                top = f[y:y + 1, c0:c1 + 1]
            if bottom.size == 0:
                bottom = f[y:y + 1, c0:c1 + 1]
            gy[y, x] = bottom.mean() - top.mean()
    return np.hypot(gx, gy)


def main():
    w = 5
    img, split = texture_scene(128, 64, 2, 100)
    interior = (slice(w, 64 - w), slice(split + w, 128 - w))
    print(f"texture 128x64 period 2 amplitude 100, patch interior [{split + w},{128 - w}) x [{w},{64 - w})")
    print(f"  mean haar  = {haar(img, w)[interior].mean():.12f}")
    print(f"  mean sobel = {sobel(img)[interior].mean():.12f}")

    step = step_scene(64, 32, 50, 200)
    hp, sp = haar(step, w).max(), sobel(step).max()
    print("step 64x32 {50,200}")
    print(f"  peak haar = {hp:.12f}  peak sobel = {sp:.12f}  ratio = {hp / sp:.12f}")

    for bw in (5, 9, 13):
        img, split = texture_scene(128, 64, 2, 100)
        print(f"  texture mean haar w={bw}: {haar(img, bw)[interior].mean():.12f}")


if __name__ == "__main__":
    main()
