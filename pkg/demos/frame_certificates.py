"""Frames, frame bounds, and the synthesis-operator certificate.

The frame operator S = sum f_n f_n* carries everything: its extreme
eigenvalues are the optimal frame bounds, S^(-1/2) produces the canonical
Parseval frame, and the synthesis operator A (columns f_n) satisfies
C1 <= ||A||^2 <= C2 with A A* = S invertible.
"""

import numpy as np

from schattenframes import (
    canonical_parseval,
    certify_synthesis,
    make_frame,
    random_frame,
    random_onb,
    union_frame,
)

# A hand-built frame: e1 twice plus e2.
frame = make_frame([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
print("frame {e1, e1, e2}:")
print("  operator:\n", frame.frame_operator.real)
print("  bounds:", frame.bounds)

cert = certify_synthesis(frame)
print(f"  certificate: ||A||^2 = {cert.op_norm_sq:.6f} in "
      f"[{cert.lower_bound}, {cert.upper_bound}], rank {cert.rank} "
      f"(A is not injective), passed = {cert.passed}")

parseval = canonical_parseval(frame)
print("  Parseval projection vectors:\n", np.round(parseval.vectors.real, 6))
print("  new bounds:", tuple(round(b, 12) for b in parseval.bounds))

# The Mercedes frame: three unit vectors at 120 degrees, a tight frame.
angles = np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3])
mercedes = make_frame(np.vstack([np.cos(angles), np.sin(angles)]))
print("\nMercedes frame bounds (tight, 3/2):", mercedes.bounds)
print("after Parseval rescale, vector norms:",
      np.round(np.linalg.norm(canonical_parseval(mercedes).vectors, axis=0), 6))

# Unions add frame operators.
doubled = union_frame(make_frame(np.eye(3)), make_frame(np.eye(3)))
print("\nONB union ONB bounds:", doubled.bounds)

# Seeded generators: reproducible ONBs and condition-controlled frames.
onb = random_onb(4, seed=7)
print("\nrandom ONB bounds:", tuple(round(b, 12) for b in onb.bounds))
for target in (1.0, 2.0, 10.0):
    f = random_frame(4, 9, condition_target=target, seed=11)
    print(f"random frame, condition target {target}: achieved {f.condition:.6f}")
