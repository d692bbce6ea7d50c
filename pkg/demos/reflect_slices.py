"""Rightmost slice, completions and reflections on the mutated six-vertex algebra.

    python3 demos/reflect_slices.py
"""
from clustertilt import completion, load_fixture, reflect_slice, rightmost_slice, slice_fragment
from clustertilt.relext import certify_relation_extension, relation_extension


def show(title, names):
    print(f"{title}: {{{', '.join(names)}}}")


def main():
    bq, B = load_fixture("sec4_B")
    frag = slice_fragment(B, ["3", "6"], steps=6)
    print(f"window of {len(frag)} modules")
    sl = rightmost_slice(frag)
    show("rightmost slice", sl.names())
    print("strong sinks:", [B.vertices[v] for v in sl.strong_sinks()])
    for x in sl.strong_sinks():
        H = completion(sl, x)
        lab = B.vertices[x]
        show(f"H_{lab}", H.names())
        print(f"  J = {H.names(H.J)}, J- = {H.names(H.Jminus)}, E = {H.names(H.E)}")
        out = reflect_slice(sl, x)
        show(f"sigma_{lab}", out.names())
        C = out.quotient()
        iso = certify_relation_extension(bq, relation_extension(C)) is not None
        print(f"  quotient of dimension {C.dim}, relation-extension is B: {iso}")
    x3, x6 = B.vertex("3"), B.vertex("6")
    twice = reflect_slice(reflect_slice(sl, x3), x6)
    print("sigma_6 sigma_3 = sigma_6:", twice.members == reflect_slice(sl, x6).members)


if __name__ == "__main__":
    main()
