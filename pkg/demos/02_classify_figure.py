"""Classifying the occlusion level of one pedestrian.

Generates a synthetic walking figure, drops a horizontal occluder over
its legs, and runs the keypoint classifier against both versions. The
occlusion percentage is the summed body-surface weight of the parts
whose keypoint evidence disappeared.
"""

from occlometer import (
    FigureSpec,
    ImageFrame,
    OccluderSpec,
    apply_occluder,
    classify_occlusion,
    generate_figure,
)

W, H = 192, 256

spec = FigureSpec(anchor=(96.0, 24.0), height=190.0, pose="walking", seed=42)
person = generate_figure(spec, W, H, instance_id="walker")
frame = ImageFrame(frame_id="demo", width=W, height=H, instances=(person,))

clean = classify_occlusion(person, frame)
print(f"clean figure:    {clean.occlusion_percent:6.2f}% occluded")

# a fence-like strip across the lower third of the frame
strip = OccluderSpec(
    shape="horizontal_strip",
    placement=(0.0, 170.0, float(W), float(H)),
    coverage_target=0.3,
)
outcome = apply_occluder(person, strip)
blocked = outcome.occluded_instance
frame2 = ImageFrame(frame_id="demo", width=W, height=H, instances=(blocked,))

result = classify_occlusion(blocked, frame2)
print(f"behind strip:    {result.occlusion_percent:6.2f}% occluded")
print("parts lost:     ", ", ".join(result.occluded_parts_ordered()) or "none")
print(f"pixel fraction:  {outcome.analytic_occlusion:.4f} of the body surface hidden")

print("\nper-keypoint verdicts for the occluded figure:")
for v in result.keypoint_verdicts:
    if not v.visible:
        print(f"    {v.name.value:15s} {v.reason.value}")
