"""
Serving predictions over HTTP
=============================

Trains a small model, mounts it in the prediction service, and exercises
the three endpoints in process (no sockets needed). A browser client uses
GET /schema to build its input form, then POSTs raw field values.

To serve for real:  python3 -m carecost.service --model model.json --port 8000
"""
import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from carecost import default_synthetic_spec, generate_synthetic, train_model
from carecost.service import create_app

workdir = Path(tempfile.mkdtemp(prefix="carecost-svc-"))
model_path = workdir / "model.json"

data = generate_synthetic(default_synthetic_spec(noise_sigma=500.0), n=2000, seed=2)
train_model("tree", data.dataset, {"max_depth": 2}).save(model_path)

client = TestClient(create_app(str(model_path)))

print("GET /health ->", client.get("/health").json())

schema = client.get("/schema").json()
print(f"\nGET /schema -> {len(schema['features'])} features, "
      f"target {schema['target']!r}")
for feat in schema["features"][:3]:
    cats = feat.get("categories")
    print(f"  {feat['name']}: {feat['kind']}"
          + (f", {len(cats)} choices" if cats else ""))

# A client form fills one value per feature; unknown categories are legal
# and fall back to the reserved code instead of erroring.
request = {f["name"]: f["categories"][1] for f in schema["features"]}
resp = client.post("/predict", json=request)
print(f"\nPOST /predict {json.dumps(request)[:60]}...")
print("  ->", resp.json())

# Validation answers name the offending field so forms can highlight it.
bad = dict(request)
del bad["CCS Diagnosis Code"]
resp = client.post("/predict", json=bad)
print(f"\nPOST /predict with a missing field -> {resp.status_code}:",
      resp.json()["detail"])
