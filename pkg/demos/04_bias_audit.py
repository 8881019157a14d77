"""
Auditing a study design for selection bias
==========================================

`audit_bias` compares three exposure/outcome contrasts — inside the
selected subgroup, in the whole population, and under intervention —
and flags a reversal when selection flips the sign of the causal
effect.  The stress model shows the flip; the dating model shows the
classic two-cause collider on its own.
"""

from colliderbn import audit_bias, build_berkson_dating, build_stress_model

stress = build_stress_model()
report = audit_bias(stress, exposure="stress", outcome="covid19",
                    outcome_state="true", exposure_states=("true", "false"),
                    selection={"tested": "true"})

print("stress model, selected on tested=true")
print(f"  selected contrast       = {report.selected_contrast:+.5f}")
print(f"  population contrast     = {report.population_contrast:+.5f}")
print(f"  interventional contrast = {report.interventional_contrast:+.5f}")
print(f"  reversal                = {report.reversal}")

# looks and personality are independent until a date enters the study
dating = build_berkson_dating()
report = audit_bias(dating, exposure="looks", outcome="personality",
                    outcome_state="nice",
                    exposure_states=("attractive", "unattractive"),
                    selection={"date": "true"})
print("\ndating model, selected on date=true")
print(f"  population contrast = {report.population_contrast:+.5f}")
print(f"  selected contrast   = {report.selected_contrast:+.5f}")
print("  open paths under selection:")
for path in report.paths_selected:
    if path.open_given:
        print("   ", " ".join(path.tokens()))
