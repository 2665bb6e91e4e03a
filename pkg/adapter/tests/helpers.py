"""Drawing utilities shared by the adapter tests.

The synthetic backends detect bright connected components, so a test
scene is just dark canvas with stylized standing figures stamped onto
it: a head disc, a torso block, and two leg columns, all touching so
each figure labels as a single component.
"""

import numpy as np
from PIL import Image


def blank_canvas(width: int, height: int) -> np.ndarray:
    return np.zeros((height, width, 3), dtype=np.uint8)


def draw_person(canvas: np.ndarray, left: int, top: int,
                width: int, height: int, value: int = 230) -> None:
    """Stamp one bright standing figure, in place."""
    head_r = max(2, width // 4)
    cx = left + width // 2
    head_cy = top + head_r
    yy, xx = np.ogrid[:canvas.shape[0], :canvas.shape[1]]
    head = (xx - cx) ** 2 + (yy - head_cy) ** 2 <= head_r ** 2
    canvas[head] = value

    torso_top = top + 2 * head_r
    torso_bot = top + int(height * 0.55)
    canvas[torso_top:torso_bot, left:left + width] = value

    leg_w = max(2, width // 3)
    leg_bot = top + height
    canvas[torso_bot:leg_bot, left:left + leg_w] = value
    canvas[torso_bot:leg_bot, left + width - leg_w:left + width] = value


def save_png(path, canvas: np.ndarray) -> None:
    Image.fromarray(canvas).save(path)
