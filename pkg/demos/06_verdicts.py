# Per-prime verdicts
#
# A verdict collects every hypothesis check and lists each failure as a
# reason code. With no failures the outcome is "empty" when B splits over k
# and "elliptic_only" otherwise.

# %%
from collections import Counter

from shimura_gate import VerdictOptions, evaluate, evaluate_range, irreducibility_verdict, parse_field_spec, validate_discriminant

B = validate_discriminant(10)

# %%
# Q(sqrt(-5)): the exceptional set is computed, so verdicts are unconditional.
verdicts = evaluate_range(B, parse_field_spec("quad:-5"), 2, 500)
print(Counter(v.outcome for v in verdicts))
print(Counter(code for v in verdicts for code in v.reasons).most_common())
print(next(v for v in verdicts if v.outcome == "empty").describe())

# %%
# Degree 4 and 12 examples rely on an explicit assumption that p lies outside L.
assume = VerdictOptions(assume_outside_exceptional=True)
print(evaluate(B, parse_field_spec("biquad:-5,7"), 127, assume).describe())
print(evaluate(validate_discriminant(22), parse_field_spec("cyclo:13"), 331, assume).describe())

# %%
# Class number one: Q(i) is its own Hilbert class field, so nothing can be said.
print(evaluate(B, parse_field_spec("quad:-1"), 101).describe())

# %%
# When B does not split over k, surviving points can only be elliptic.
print(evaluate(B, parse_field_spec("quad:-31"), 1009, assume).describe())

# %%
print(irreducibility_verdict(B, parse_field_spec("biquad:-5,7"), 331, assume).describe())
