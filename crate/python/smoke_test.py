"""Smoke test for the klrw Python module.

Build it first, e.g. `pip install --no-build-isolation -e crates/python`.
"""

import json

import klrw


def main():
    assert len(klrw.multisegments(2, [1], [0, 1])) == 3
    assert len(klrw.multisegments(2, [1], [0, 0])) == 2
    assert klrw.good_word("{(1),(2),(2,1),(3,2,1)@0,(3,2)@1}", 3) == "1,2,1,2,3,2,1,3,2"

    zero = {"m": 2, "v": [1], "chi": [0, 1], "maps": [[["0"], ["0"]]]}
    multisegment, orbit = klrw.classify(json.dumps(zero))
    assert multisegment == "{(1),(2)@0,(2)@1}" and orbit == 0
    try:
        klrw.classify("{not json")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed JSON was accepted")

    assert klrw.gt_word([[1], [4, 4], [1, 2, 3]]) == "3,1,3,3,2^2"
    assert klrw.gt_pattern_count([0, 1, 3]) == 3
    assert klrw.translate([1, 1, 2], 1) == [1, 2, 2]
    assert klrw.translate([1, 1, 2], 5) is None

    checks, failures = klrw.verify_relations(2, 3)
    assert checks > 0 and failures == 0
    assert klrw.check_intertwiner([[1], [0, 2]], 0, k=0, s=1)
    print("python smoke test passed")


if __name__ == "__main__":
    main()
