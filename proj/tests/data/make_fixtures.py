#!/usr/bin/env python3
"""Regenerates the committed decode fixtures (PNG files plus PNM twins).

The PNG side is written by Pillow so the decoder is tested against an
independent encoder. Pixel values are fixed formulas, no randomness.
"""

import os

from PIL import Image

HERE = os.path.dirname(os.path.abspath(__file__))


def rgb(width, height):
    img = Image.new("RGB", (width, height))
    for y in range(height):
        for x in range(width):
            img.putpixel((x, y), ((x * 17 + y * 3) % 256, (x * 5 + y * 29) % 256, (x + y * 11) % 256))
    return img


def gray(width, height):
    img = Image.new("L", (width, height))
    for y in range(height):
        for x in range(width):
            img.putpixel((x, y), (x * 23 + y * 7) % 256)
    return img


def main():
    rgb_img = rgb(16, 12)
    rgb_img.save(os.path.join(HERE, "rgb_grad.png"))
    rgb_img.save(os.path.join(HERE, "rgb_grad.ppm"))

    gray_img = gray(13, 7)
    gray_img.save(os.path.join(HERE, "gray_ramp.png"))
    gray_img.save(os.path.join(HERE, "gray_ramp.pgm"))

    rgba = rgb(9, 5).convert("RGBA")
    for y in range(5):
        for x in range(9):
            r, g, b, _ = rgba.getpixel((x, y))
            rgba.putpixel((x, y), (r, g, b, (x * 40 + y) % 256))
    rgba.save(os.path.join(HERE, "rgba.png"))
    rgba.convert("RGB").save(os.path.join(HERE, "rgba_rgb.ppm"))

    la = gray(8, 6).convert("LA")
    la.save(os.path.join(HERE, "graya.png"))
    la.convert("L").save(os.path.join(HERE, "graya_gray.pgm"))


if __name__ == "__main__":
    main()
