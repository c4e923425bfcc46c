"""Elements of a fixed order: fixed points and 2-cycles."""

import math

from symgen import check_generation_hypotheses, class_ratio, order_m_profile
from symgen.perm import CycleType

# %% involutions have about sqrt(n) fixed points
for n in (100, 400, 900, 2500):
    mean = order_m_profile(n, 2).mean_fixed_points()
    print(n, round(float(mean), 3), round(float(mean) / math.sqrt(n), 4))

# %% the joint law of (fixed points, 2-cycles) at order 6
prof = order_m_profile(12, 6)
print(prof.to_csv())

# %% order 35 in S_39: the 35-cycle class carries almost all the mass
rep = check_generation_hypotheses(39, 35)
print(rep.dominant_type, float(rep.dominant_mass))
print(rep.case_tags)

# %% m = 2 is flagged
print(check_generation_hypotheses(50, 2).case_tags)

# %% trading kd fixed points for k d-cycles shrinks the class by a known factor
print(class_ratio(CycleType.identity(10), 2, 1))
