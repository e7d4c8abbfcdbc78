"""
Campaigns over all small trees
==============================

Exhaustive tree check, the cut-vertex audit and an identity fuzz run.
"""

from strongcospec import audit_cut_triples, fuzz_identities, verify_trees

rep = verify_trees(10)
print("verify-trees:", "OK" if rep.success else "FAIL", dict(rep.totals))

audit = audit_cut_triples(9)
print("audit:", "OK" if audit.success else "FAIL", audit.extra["lambda_branches"])

fuzz = fuzz_identities(200, 8, seed=1)
print("fuzz:", "OK" if fuzz.success else "FAIL", fuzz.totals["instances"], "instances")
