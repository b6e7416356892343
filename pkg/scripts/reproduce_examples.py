import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
# repo root on sys.path so the local packages import
sys.path.insert(0, str(ROOT))

from analytics.reporting import comparison_frame, render  # noqa: E402
from codes.bounds import applicable_bound, headline_comparisons  # noqa: E402
from codes.code_store import load_code  # noqa: E402
from validation.verifier import verify_code  # noqa: E402

frame = comparison_frame(headline_comparisons())
print("Headline size comparisons:\n")
print(render(frame))

print("\nShipped code files:\n")
for path in sorted((ROOT / "config_store" / "codes").glob("*.json")):
    code = load_code(path)
    mode = "exhaustive" if code.size * code.n**code.t < 10**7 else "sampled"
    report = verify_code(code, mode=mode, trials=300, seed=0)
    bound = applicable_bound(code.n, code.t, code.w, code.kind != "lpc")
    status = "ok" if report.passed else "FAILED"
    print(f"{path.name}: ({code.n},{code.t},{code.w}) size={code.size} bound={bound} {mode} {status}")
    if not report.passed:
        raise SystemExit(1)
