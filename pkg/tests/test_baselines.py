import pytest

from occlometer import (
    BoundingBox,
    CITYPERSONS_ASPECT,
    CityPersonsAnnotation,
    DegenerateInputError,
    FullExtentBox,
    bbox_occlusion_rate,
    citypersons_full_box,
    citypersons_occlusion,
)


def ann(head=(50.0, 10.0), feet=(50.0, 110.0), vis=(29.5, 10.0, 70.5, 110.0)):
    return CityPersonsAnnotation(
        head_top=head, feet_mid=feet, bbox_visible=BoundingBox(*vis)
    )


def test_aspect_constant():
    assert CITYPERSONS_ASPECT == 0.41


def test_full_box_geometry():
    # line height 100 -> box width 41, centered on the line's x midpoint
    box = citypersons_full_box(ann()).bbox_full
    assert box.y_min == 10.0 and box.y_max == 110.0
    assert box.x_min == pytest.approx(29.5)
    assert box.x_max == pytest.approx(70.5)
    assert box.area == pytest.approx(4100.0)


def test_full_box_centers_on_slanted_line():
    box = citypersons_full_box(ann(head=(40.0, 10.0), feet=(60.0, 110.0))).bbox_full
    assert (box.x_min + box.x_max) / 2.0 == pytest.approx(50.0)
    assert box.x_max - box.x_min == pytest.approx(41.0)


def test_occlusion_half_covered():
    # visible box is the top half of the full box
    a = ann(vis=(29.5, 10.0, 70.5, 60.0))
    assert citypersons_occlusion(a) == pytest.approx(0.5)


def test_occlusion_fully_visible_is_zero():
    assert citypersons_occlusion(ann()) == pytest.approx(0.0)


def test_wide_pose_clamps_to_zero():
    # a visible box wider than the fixed-aspect estimate must not go negative
    a = ann(vis=(0.0, 10.0, 100.0, 110.0))
    assert citypersons_occlusion(a) == 0.0


def test_zero_area_visible_box_is_full_occlusion():
    a = ann(vis=(50.0, 50.0, 50.0, 50.0))
    assert citypersons_occlusion(a) == 1.0


def test_feet_not_below_head_rejected():
    with pytest.raises(DegenerateInputError):
        ann(head=(50.0, 110.0), feet=(50.0, 10.0))
    with pytest.raises(DegenerateInputError):
        ann(head=(50.0, 10.0), feet=(50.0, 10.0))


def test_full_extent_box_checks_aspect():
    with pytest.raises(DegenerateInputError):
        FullExtentBox(BoundingBox(0.0, 0.0, 50.0, 100.0))
    FullExtentBox(BoundingBox(0.0, 0.0, 41.0, 100.0))  # exact aspect passes


# ------------------------------------------------------------ bbox_occlusion_rate

T = BoundingBox(0.0, 0.0, 10.0, 10.0)


def test_rate_disjoint_is_zero():
    assert bbox_occlusion_rate(T, [BoundingBox(20.0, 0.0, 30.0, 10.0)]) == 0.0
    assert bbox_occlusion_rate(T, []) == 0.0


def test_rate_half_overlap():
    assert bbox_occlusion_rate(T, [BoundingBox(5.0, 0.0, 15.0, 10.0)]) == pytest.approx(0.5)


def test_rate_does_not_double_count_nested_overlaps():
    others = [
        BoundingBox(5.0, 0.0, 15.0, 10.0),   # covers x in [5, 10)
        BoundingBox(8.0, 0.0, 12.0, 10.0),   # inside the same strip
    ]
    assert bbox_occlusion_rate(T, others) == pytest.approx(0.5)


def test_rate_l_shaped_union():
    # 40 + 40 - 16 shared = 64 of 100
    others = [
        BoundingBox(0.0, 0.0, 4.0, 10.0),
        BoundingBox(0.0, 0.0, 10.0, 4.0),
    ]
    assert bbox_occlusion_rate(T, others) == pytest.approx(0.64)


def test_rate_caps_at_one():
    others = [
        BoundingBox(-5.0, -5.0, 20.0, 20.0),
        BoundingBox(0.0, 0.0, 10.0, 10.0),
    ]
    assert bbox_occlusion_rate(T, others) == 1.0


def test_rate_zero_area_target_rejected():
    with pytest.raises(DegenerateInputError):
        bbox_occlusion_rate(BoundingBox(1.0, 1.0, 1.0, 5.0), [T])


def test_rate_ignores_zero_area_others():
    assert bbox_occlusion_rate(T, [BoundingBox(3.0, 3.0, 3.0, 3.0)]) == 0.0


def test_rate_three_way_union_hand_value():
    # columns [0,3), [2,5), rows strip [0,10)x[4,6): union area by hand:
    # 3*10 + 3*10 - 1*10 (shared column overlap) = 50, strip adds the part
    # right of x=5: 5*2 = 10 -> 60 total
    others = [
        BoundingBox(0.0, 0.0, 3.0, 10.0),
        BoundingBox(2.0, 0.0, 5.0, 10.0),
        BoundingBox(0.0, 4.0, 10.0, 6.0),
    ]
    assert bbox_occlusion_rate(T, others) == pytest.approx(0.60)
