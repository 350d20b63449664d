import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "name,args,expect",
    [
        ("verify_odd_orders.py", ["--max-order", "9"], "0 counterexamples"),
        ("even_order_census.py", ["--max-order", "10"], "Z10{1,2,8,9}"),
        ("reducible_cover_orders.py", ["--max-order", "9"], "559872"),
    ],
)
def test_script_runs(name, args, expect, capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", [name, *args])
    with pytest.raises(SystemExit) as exc:
        runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    assert exc.value.code == 0
    assert expect in capsys.readouterr().out
