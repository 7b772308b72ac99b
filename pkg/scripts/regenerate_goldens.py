"""Rewrite scenarios/golden/*.out from the current code. Review the diff before committing."""

from pathlib import Path

from diffpoly.cli import golden

ROOT = Path(__file__).resolve().parent.parent / "scenarios"


def main() -> None:
    (ROOT / "golden").mkdir(exist_ok=True)
    for scn in sorted(ROOT.glob("*.scn")):
        target = ROOT / "golden" / f"{scn.stem}.out"
        target.write_text(golden(scn.read_text()))
        print(f"wrote {target.relative_to(ROOT.parent)}")


if __name__ == "__main__":
    main()
