"""Round-tripping instance masks through run-length encoding.

The on-disk mask format is a flat list of run lengths over the row-major
pixel sequence, alternating unset/set and starting with the unset count
(which may be zero). This walk-through builds a small mask by hand,
encodes it, and shows that decoding accepts non-canonical inputs too.
"""

import numpy as np

from occlometer import InstanceMask, rle_decode, rle_encode

bits = np.zeros((6, 8), dtype=bool)
bits[1:5, 2:6] = True  # a 4x4 block floating in a 8x6 frame
mask = InstanceMask(bits)

print("mask:")
for row in bits:
    print("   ", "".join("#" if v else "." for v in row))
print("area:", mask.area(), "pixels")

counts = rle_encode(mask)
print("encoded runs:", counts)
print("sum of runs:", sum(counts), "=", mask.width * mask.height, "pixels")

back = rle_decode(counts, mask.width, mask.height)
print("round trip equal:", back == mask)

# Decoding tolerates zero-length interior runs; encoding never emits them.
noisy = [10, 4, 0, 0, 4, 4, 4, 4, 4, 4, 10]
same = rle_decode(noisy, 8, 6)
print("non-canonical input decodes to the same mask:", same == mask)
print("canonical form of that input:", rle_encode(same))
