"""Run a small benchmark campaign and emit every report format.

Three generated instances, three runs each. Run i of an instance is seeded
base_seed + i, so rerunning this script reproduces the table exactly.
"""

from mbbp import CampaignConfig, InstanceSpec, SolverParams, run_campaign
from mbbp.harness import report_to_csv, report_to_json, report_to_table

config = CampaignConfig(
    instances=(
        InstanceSpec.from_gen(60, 0.7, 1),
        InstanceSpec.from_gen(60, 0.7, 2),
        InstanceSpec.from_gen(80, 0.5, 1),
    ),
    runs=3,
    params=SolverParams.dense(time_limit=3.0, seed=42),
)

report = run_campaign(config)

print(report_to_table(report))

print("same campaign as CSV:\n")
print(report_to_csv(report))

json_text = report_to_json(report)
print(f"JSON form is {len(json_text)} bytes with per-run detail; head:")
print("\n".join(json_text.splitlines()[:12]))
