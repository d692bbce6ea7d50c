"""Relation-extension of a tilted algebra, then back to the tilted algebra.

    python3 demos/relext_roundtrip.py [base] [target]
"""
import sys

from clustertilt import certify_relation_extension, isomorphic_by_labels, load_fixture, relation_extension


def main(base="sec3_C", target="sec3_B"):
    bqC, C = load_fixture(base)
    bqB, B = load_fixture(target)
    ext = relation_extension(C)
    print(f"C = {base}: dimension {C.dim}")
    print(f"Ext^2(DC, C): dimension {ext.bimodule.dim}, new arrows {', '.join(ext.new_arrows)}")
    print(ext.presentation.to_text())
    images = certify_relation_extension(bqB, ext)
    print(f"isomorphic to {target}: {images is not None}")
    if images is not None:
        new = [a.label for a in bqB.arrows if a.label not in {x.label for x in C.arrows}]
        Q = B.quotient([B.arrow(a) for a in new])
        print(f"{target} / <{', '.join(new)}> has dimension {Q.dim}; equals C: {isomorphic_by_labels(bqC, Q)}")


if __name__ == "__main__":
    main(*sys.argv[1:3])
