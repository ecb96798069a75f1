import pytest

from rnajoint.oracle import (
    CapacityError,
    JointDiagram,
    enumerate_joint,
    enumerate_secondary,
    enumerate_shapes,
    exterior_stack_lengths,
    generate_joint,
    generate_secondary,
    is_zigzag_free,
    stack_lengths,
    tight_decompose,
)
from rnajoint.secondary import ParameterError, StructureParams

P112 = StructureParams(1, 1, 2)

# Two dependent arcs, R1R4 and S2S5, sharing only the exterior arc R3S3.
ZIGZAG = JointDiagram(5, 5, {(1, 4)}, {(2, 5)}, {(2, 1), (3, 3), (5, 4)})
SQUARE = JointDiagram(3, 3, {(1, 3)}, {(1, 3)}, {(2, 2)})


def stacked_example():
    """A 21 x 21 structure with arcs >= 3, interior stacks >= 2, exterior stacks >= 3.

    R1R15, R2R14 and S1S21, S2S20 enclose everything; R3R9, R4R8 and S3S9, S4S8
    enclose the exterior stack starting at R5S5; a second exterior stack starts
    at R10S17.  R[16,21] and S[10,15] carry only interior arcs.
    """
    top = {(1, 15), (2, 14), (3, 9), (4, 8), (16, 21), (17, 20)}
    bottom = {(1, 21), (2, 20), (3, 9), (4, 8), (10, 15), (11, 14)}
    ext = {(5, 5), (6, 6), (7, 7), (10, 17), (11, 18), (12, 19)}
    return JointDiagram(21, 21, top, bottom, ext)


def test_secondary_examples():
    assert enumerate_secondary(0) == 1 and enumerate_secondary(1) == 1
    assert enumerate_secondary(6, 1, 2) == 17
    assert enumerate_secondary(2, 1, 1) == 2
    assert sorted(map(sorted, generate_secondary(4, 1, 2))) == [[], [(1, 3)], [(1, 4)], [(2, 4)]]


def test_secondary_stack_filter():
    # with sigma=2 a lone arc is forbidden; the first structure is the stack (1,5),(2,4)
    got = [set(s) for s in generate_secondary(5, 2, 2)]
    assert got == [set(), {(1, 5), (2, 4)}]


def test_caps_and_argument_errors():
    with pytest.raises(CapacityError):
        enumerate_secondary(23)
    with pytest.raises(CapacityError):
        enumerate_joint(9, 8, P112)
    with pytest.raises(CapacityError):
        enumerate_shapes(8)
    with pytest.raises(ParameterError):
        enumerate_joint(-1, 2, P112)


def test_stack_helpers():
    assert sorted(stack_lengths({(1, 10), (2, 9), (3, 8), (4, 6)})) == [1, 3]
    assert sorted(exterior_stack_lengths({(1, 1), (2, 2), (4, 5)})) == [1, 2]


def test_validate_rejects_bad_diagrams():
    with pytest.raises(ValueError, match="cross"):
        JointDiagram(4, 0, {(1, 3), (2, 4)}).validate()
    with pytest.raises(ValueError, match="more than one arc"):
        JointDiagram(3, 1, {(1, 3)}, (), {(3, 1)}).validate()
    with pytest.raises(ValueError, match="exterior arcs cross"):
        JointDiagram(2, 2, (), (), {(1, 2), (2, 1)}).validate()


def test_zigzag_examples():
    ZIGZAG.validate()
    assert not is_zigzag_free(ZIGZAG)
    assert is_zigzag_free(JointDiagram(3, 3, (), (), {(1, 1), (3, 3)}))
    assert is_zigzag_free(SQUARE)
    assert is_zigzag_free(stacked_example())


def test_joint_small_case():
    assert enumerate_joint(1, 1, P112) == {0: 1, 1: 1}
    assert enumerate_joint(0, 0, P112) == {0: 1}


@pytest.mark.parametrize(
    "sigma,expected",
    [(1, [2, 4, 10, 26, 70, 194, 550, 1590]), (2, [2, 3, 4, 6, 12, 26, 54, 105])],
)
def test_joint_totals_by_size(sigma, expected):
    p = StructureParams(sigma, sigma, 2)
    totals = [
        sum(sum(enumerate_joint(n, s - n, p).values()) for n in range(s + 1))
        for s in range(1, 9)
    ]
    assert totals == expected


def test_joint_symmetry():
    for p in (P112, StructureParams(2, 1, 2), StructureParams(1, 2, 1)):
        for n in range(7):
            for m in range(7 - n):
                assert enumerate_joint(n, m, p) == enumerate_joint(m, n, p)


def test_zigzag_filter_is_active():
    assert sum(enumerate_joint(4, 5, P112, zigzag_free=False).values()) == sum(
        enumerate_joint(4, 5, P112).values()
    )
    free = enumerate_joint(5, 5, P112)
    loose = enumerate_joint(5, 5, P112, zigzag_free=False)
    assert sum(loose.values()) > sum(free.values())
    rejected = [d for d in generate_joint(5, 5, P112, zigzag_free=False) if not is_zigzag_free(d)]
    assert ZIGZAG in rejected


def test_generated_diagrams_satisfy_constraints():
    p = StructureParams(2, 2, 3)
    for d in generate_joint(6, 5, p):
        d.validate()
        assert is_zigzag_free(d)
        assert all(s >= 2 for s in stack_lengths(d.interior_top))
        assert all(s >= 2 for s in stack_lengths(d.interior_bottom))
        assert all(s >= 2 for s in exterior_stack_lengths(d.exterior))
        assert d.min_arc_length() is None or d.min_arc_length() >= 3


def _partitions_rows(dec, n, m):
    top = sorted(b.top for b in dec.blocks if b.top)
    bottom = sorted(b.bottom for b in dec.blocks if b.bottom)
    for spans, size in ((top, n), (bottom, m)):
        cursor = 1
        for lo, hi in spans:
            assert lo == cursor
            cursor = hi + 1
        assert cursor == size + 1


@pytest.mark.parametrize("p", [P112, StructureParams(1, 1, 1), StructureParams(2, 2, 2)])
def test_decomposition_round_trip(p):
    for n in range(6):
        for m in range(7 - n):
            for d in generate_joint(n, m, p):
                dec = tight_decompose(d)
                assert dec.reassemble(n, m) == d
                _partitions_rows(dec, n, m)
                seen = [e for b in dec.tight_blocks() for e in b.all_arcs()[2]]
                assert sorted(seen) == sorted(d.exterior)
                assert all(b.kind != "segment" or b.all_arcs()[2] == set() for b in dec.blocks)


def test_lone_exterior_arc():
    dec = tight_decompose(JointDiagram(3, 2, (), (), {(2, 1)}))
    kinds = [b.kind for b in dec.blocks]
    assert kinds.count("circle") == 1 and set(kinds) <= {"circle", "segment"}
    assert [b.top for b in dec.blocks if b.kind == "segment" and b.top] == [(1, 1), (3, 3)]


def test_square_block():
    dec = tight_decompose(SQUARE)
    assert [b.kind for b in dec.blocks] == ["square"]
    assert [b.kind for b in dec.blocks[0].inner.blocks] == ["circle"]


def test_down_and_up_blocks():
    down = JointDiagram(3, 1, {(1, 3)}, (), {(2, 1)})
    up = JointDiagram(1, 3, (), {(1, 3)}, {(1, 2)})
    assert [b.kind for b in tight_decompose(down).blocks] == ["down"]
    assert [b.kind for b in tight_decompose(up).blocks] == ["up"]


def test_zigzag_cannot_be_decomposed():
    with pytest.raises(ValueError, match="zigzag"):
        tight_decompose(ZIGZAG)


def test_stacked_example_decomposition():
    d = stacked_example()
    d.validate()
    assert min(stack_lengths(d.interior_top) + stack_lengths(d.interior_bottom)) >= 2
    assert min(exterior_stack_lengths(d.exterior)) >= 3
    assert d.min_arc_length() >= 3
    dec = tight_decompose(d)
    assert dec.reassemble(21, 21) == d
    assert [(b.kind, b.top, b.bottom) for b in dec.blocks] == [
        ("square", (1, 15), (1, 21)),
        ("segment", (16, 21), None),
    ]
    segments = [(b.top, b.bottom) for b in dec.segments()]
    assert ((16, 21), None) in segments
    # the bottom segment is maximal, so it runs on to the unpaired S16
    bottom = [s for t, s in segments if s is not None]
    assert any(lo <= 10 and 15 <= hi for lo, hi in bottom)
    assert (None, (10, 16)) in segments
