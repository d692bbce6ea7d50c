"""All partition ideals of the E7~ cluster-tilted algebra and their quotients.

    python3 demos/e7_partitions.py
"""
from clustertilt import enumerate_partitions, load_fixture, locate_summands
from clustertilt.partition import euclidean_flag
from clustertilt.relext import certify_relation_extension, relation_extension


def main():
    bq, B = load_fixture("e7tilde")
    part = locate_summands(B)
    V = B.vertices
    print("transjective:", " ".join(V[v] for v in part.transjective))
    for t, r in zip(part.tubes, part.ranks):
        print(f"tube with {' '.join(V[v] for v in t)}: rank {r}")
    print("tubular type", tuple(part.ranks), "euclidean:", euclidean_flag(part.ranks))
    for row in enumerate_partitions(B, part):
        sub = ", ".join("{" + " ".join(V[v] for v in part.tubes[k]) + "}" for k in row.subset) or "none"
        iso = certify_relation_extension(bq, relation_extension(row.quotient)) is not None
        cl = row.classification
        print(f"I = {sub:<24} K = <{', '.join(row.ideal.generator_names())}>")
        print(f"    {cl.label}, gldim {cl.gldim}, relext(B/K) = B: {iso}")


if __name__ == "__main__":
    main()
