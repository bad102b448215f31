# Genus-zero models x^2 + y^2 + c = 0
#
# For d in {6, 10, 22} the curve is a conic. Local solvability comes from
# Hilbert symbols; over a completion of degree n the symbol is raised to n.

# %%
from shimura_gate.curves import conic_for, has_k_point, local_solvable_Qp, obstruction_places
from shimura_gate.fields import parse_field_spec

# %%
for d in (6, 10, 22):
    c = conic_for(d).c
    bad = [p for p in (2, 3, 5, 7, 11) if not local_solvable_Qp(c, p)]
    print(f"d={d}: x^2+y^2+{c}=0, no Q_p-point for p in {bad}, and none over R")

# %%
# Over the two example fields, c = 3 stays obstructed at 3: the local degree
# of 3 is 1 in the biquadratic field and 3 in Q(zeta_13), both odd.
for spec in ("biquad:-5,7", "cyclo:13"):
    k = parse_field_spec(spec)
    print(spec, "c=3:", has_k_point(3, k).to_json(), " all bad places:", obstruction_places(3, k))

# %%
# c = 2 over the biquadratic field has a point, hence infinitely many.
r = has_k_point(2, parse_field_spec("biquad:-5,7"), height=10)
print(r.to_json())

# %%
# A totally real field can never have a point: the real place already fails.
print(has_k_point(2, parse_field_spec("quad:7")).to_json())
