"""The rank-4 tube through P_B(3): induced coray, coinduced ray, mesh and mouth check.

    python3 demos/tube_and_mouth.py
"""
from clustertilt import complete_tube, load_fixture, quotient_setup, tau_omega_injective


def main():
    _, B = load_fixture("sec5_B")
    _, C1 = load_fixture("sec5_C1")
    _, C2 = load_fixture("sec5_C2")
    st1, st2 = quotient_setup(B, C1), quotient_setup(B, C2)
    T = complete_tube(B, "3", 4, st1, st2)
    print(f"tube rank {T.rank}")
    for title, line, kind in (("coray X (x) B", T.coray, "kernel"), ("ray Hom(B, X)", T.ray, "cokernel")):
        print(title)
        for src, ind in zip(line.source_line.modules, line.induced):
            print(f"  {src.dimvec_str()} -> {ind.module.dimvec_str()}   {kind} {ind.kernel.dimvec_str()}")
    J, N, R = (T.fragment.modules[i].dimvec_str() for i in T.mesh)
    print(f"mesh 0 -> {J} -> {N} -> {R} -> 0, certified: {T.mesh_certificate['ok']}")
    mc = tau_omega_injective(C1, "3")
    print("tau Omega I_C(3) =", ", ".join(M.dimvec_str() for M in mc.direct))
    print(f"predicted {mc.predicted.dimvec_str()}, on the mouth: {mc.on_mouth}, agrees: {mc.agrees}")


if __name__ == "__main__":
    main()
