"""How the published benchmarks would label the same occlusion value.

Sweeps the occlusion percentage from 0 to 100 and prints the label each
registered annotation scheme assigns, showing where their band edges
disagree. Values between a scheme's printed bands come back "unlabeled";
KITTI uses verbal states only and is reported as not numeric.
"""

from occlometer import SCHEMES, categorize

names = list(SCHEMES)
print("scheme bands:")
for name in names:
    print("   ", SCHEMES[name].describe())
print()

width = max(len(n) for n in names)
header = "  pct  " + "  ".join(f"{n:>{width}}" for n in names)
print(header)
prev = None
for pct in range(101):
    row = tuple(categorize(n, float(pct)) for n in names)
    if row == prev:
        continue  # only print rows where some label changes
    prev = row
    print(f"  {pct:3d}  " + "  ".join(f"{label:>{width}}" for label in row))
