"""Regenerate the Cthulhu JSON fixtures shipped in src/lchkit/fixtures."""
import json
from pathlib import Path

from lchkit import cthulhu
from lchkit.augment import enumerate_augmentations
from lchkit.diagram import parse_front
from lchkit.discs import differential
from lchkit.linhom import bilinearise, dualize

OUT = Path(__file__).resolve().parents[1] / "src" / "lchkit" / "fixtures"


def dump(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def main():
    # Morse model of the two-copy cylinder over the unknot, V-shaped
    dump("cth_twocopy_unknot.json", {
        "version": 1,
        "Cplus": [{"id": "g", "deg": 1}],
        "CFplus": [{"id": "q", "deg": 2}, {"id": "p", "deg": 1}],
        "Cminus": [{"id": "g'", "deg": -1}],
        "CFminus": [],
        "d": {"+0": [["g", "q"]], "0-": [["p", "g'"]]},
    })
    dump("cth_zero.json", {"version": 1, "Cplus": [], "CFplus": [], "Cminus": [], "CFminus": [], "d": {}})

    tre = differential(parse_front((OUT / "trefoil.front").read_text()))
    eps = enumerate_augmentations(tre)[0]
    co = dualize(bilinearise(tre, eps, eps))
    directed = cthulhu.cylinder_complex(co, morse_pairs=1)
    dump("cth_cylinder_trefoil.json", directed.to_json())
    plain = cthulhu.cylinder_complex(co, morse_pairs=0)
    dump("cth_trivial_cylinder_trefoil.json", plain.to_json())
    broken = directed.to_json()
    broken["d"]["00"] = []
    dump("cth_cylinder_trefoil_broken.json", broken)

    # concatenation toy data: V carries a cancelling CF pair, W a banana-fed pair
    mid = [{"id": "m", "deg": 1}]
    V = {
        "Cplus": mid, "CFplus": [], "CF": [{"id": "x'", "deg": 2}, {"id": "x", "deg": 3}],
        "Cminus": [{"id": "c", "deg": 1}], "CFminus": [],
        "d": {"+-": [["m", "c"]], "00": [["x", "x'"]]},
    }
    W = {
        "Cplus": [{"id": "p", "deg": 1}], "CFplus": [], "CF": [{"id": "y'", "deg": 1}, {"id": "y", "deg": 2}],
        "Cminus": mid, "CFminus": [],
        "d": {"+-": [["p", "m"]], "+0": [["p", "y"]], "00": [["y", "y'"]], "-0": [["m", "y'"]]},
    }
    dump("concat_toy.json", {
        "version": 1, "V": V, "W": W, "reverse_chords": ["r", "s"],
        "b": [["m", "r"]], "delta_m0": [["r", "y"], ["s", "y'"]], "delta_0p": [["x", "r"], ["x'", "s"]], "delta_mp": [],
    })
    trivial = {
        "Cplus": [{"id": "m+", "deg": 1}], "CFplus": [], "Cminus": mid, "CFminus": [],
        "d": {"+-": [["m+", "m"]]},
    }
    dump("concat_trivial_top.json", {"version": 1, "V": V, "W": trivial, "reverse_chords": []})
    bottom = {
        "Cplus": mid, "CFplus": [], "Cminus": [{"id": "m-", "deg": 1}], "CFminus": [],
        "d": {"+-": [["m", "m-"]]},
    }
    # with no bananas below, W may not feed its negative end from CF
    W0 = dict(W, d={"+-": [["p", "m"]], "00": [["y", "y'"]]})
    dump("concat_trivial_bottom.json", {"version": 1, "V": bottom, "W": W0, "reverse_chords": []})


if __name__ == "__main__":
    main()
