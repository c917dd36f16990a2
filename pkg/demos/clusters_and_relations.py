"""Seed enumeration, then the sl2 Baxter relation and its QQ* partner."""

from qaffine.cartan import cartan_data
from qaffine.cluster import enumerate_seeds, paper_seed
from qaffine.qchar import fm_fundamental
from qaffine.relations import qq_star_relation, qq_system, sl2_qqstar_tq_match, tq_relation

en = enumerate_seeds(paper_seed("a2"))
print("A2 cluster variables:")
for v in en.variables:
    print("  ", v.as_expr())
print("sl3 C_M total variables:", enumerate_seeds(paper_seed("sl3_CM")).total_variables)

sl2 = cartan_data("A1")
print(tq_relation(sl2, fm_fundamental(sl2, 1, 0), 1, 0).to_latex())
print(qq_system(sl2, 1, 0).to_latex())
print(qq_star_relation(sl2, 1, 1).to_latex())
print("QQ* matches TQ:", sl2_qqstar_tq_match(sl2, 0)[2])

b2 = cartan_data("B2")
for i in b2.nodes:
    print(f"B2 TQ at node {i}:", tq_relation(b2, fm_fundamental(b2, i, 0)).to_latex(omit_weights=True))
