#!/usr/bin/env python3
"""Regenerates the bundled 256x256 grayscale test images and the character mask.

Images come from scikit-image's sample data (public domain / CC0 sources).
The character mask is rendered once here; the C++ code only reads the PGM.
"""
import pathlib

import numpy as np
from PIL import Image, ImageDraw, ImageFont
from skimage import color, data, transform

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"


def save_pgm(path, arr):
    arr = np.asarray(arr, dtype=np.uint8)
    h, w = arr.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(arr.tobytes())


def to256(img):
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        img = color.rgb2gray(img[..., :3])
    elif img.max() > 1.0:
        img = img / 255.0
    h, w = img.shape
    s = min(h, w)
    top, left = (h - s) // 2, (w - s) // 2
    img = img[top:top + s, left:left + s]
    img = transform.resize(img, (256, 256), anti_aliasing=True)
    return np.clip(np.round(img * 255.0), 0, 255)


def character_mask():
    img = Image.new("L", (256, 256), 255)
    draw = ImageDraw.Draw(img)
    font = ImageFont.load_default()
    line = "HALPERN ANCHOR PPP TV 0123456789"
    y = 2
    while y < 256:
        draw.text((2, y), line, fill=0, font=font)
        draw.text((3, y), line, fill=0, font=font)
        y += 16
    return np.asarray(img)


def main():
    (ROOT / "images").mkdir(parents=True, exist_ok=True)
    (ROOT / "masks").mkdir(parents=True, exist_ok=True)
    for name in ["camera", "moon", "coins", "clock", "astronaut", "brick"]:
        save_pgm(ROOT / "images" / f"{name}.pgm", to256(getattr(data, name)()))
    mask = character_mask()
    print("character mask missing fraction:", float((mask < 128).mean()))
    save_pgm(ROOT / "masks" / "character.pgm", mask)


if __name__ == "__main__":
    main()
