"""
From raw discharge CSV to a typed columnar dataset
==================================================

Builds a small synthetic inpatient cohort, round-trips it through a CSV
shaped like the public discharge extracts, and shows what the ingest stage
keeps, drops, and encodes.
"""
import csv
import tempfile
from pathlib import Path

from carecost import default_synthetic_spec, generate_synthetic, ingest_csv

workdir = Path(tempfile.mkdtemp(prefix="carecost-demo-"))

# Plant a known cost structure: two informative categorical features drive
# the target through a depth-2 tree, six more features are pure noise.
spec = default_synthetic_spec(noise_sigma=800.0)
data = generate_synthetic(spec, n=1000, seed=0)
ds = data.dataset
print(f"generated {ds.row_count} stays, {len(ds.schema)} features")

# Write it back out as the kind of CSV a state agency publishes: dollar
# signs in the cost column, one header row, a couple of broken lines.
csv_path = workdir / "discharges.csv"
with open(csv_path, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(ds.schema.feature_names + [ds.schema.target_name])
    for i in range(ds.row_count):
        decoded = ds.decode_row(i)
        row = [decoded[name] for name in ds.schema.feature_names]
        row.append(f"${ds.target[i]:,.2f}")
        writer.writerow(row)
    writer.writerow(["short row"])
    writer.writerow(["L001"] * len(ds.schema) + ["not a dollar amount"])
print(f"wrote {csv_path}")

# Ingest parses money and stay lengths, builds sorted vocabularies, and
# accounts for every dropped row by column. The feature list defaults to
# the standard 11-column discharge schema; here we pass the synthetic one.
features = [(f.name, f.kind) for f in spec.features]
clean, report = ingest_csv(csv_path, features=features)
print(f"rows read {report.rows_read}, kept {report.rows_kept}, "
      f"dropped {report.rows_dropped_missing + report.rows_dropped_unparseable}")
print("drops by column:", dict(report.drops_by_column))

# Categories become 1-based codes over a sorted vocabulary; code 0 is
# reserved for values never seen in training.
feat = clean.schema.feature("CCS Diagnosis Code")
print(f"'{feat.name}' vocabulary: {feat.vocabulary[:4]}... ({feat.n_codes} codes)")
print("first row decoded:", clean.decode_row(0))
print("target head:", [float(round(v, 2)) for v in clean.target[:4]])
