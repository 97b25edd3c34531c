"""The README's python snippets must run as written."""

import re
from pathlib import Path


def test_readme_snippets_execute():
    text = Path(__file__).resolve().parent.parent.joinpath("README.md").read_text()
    blocks = re.findall(r"```python\n(.*?)```", text, re.S)
    assert blocks, "expected python examples in the README"
    ns: dict = {}
    for block in blocks:
        # drop the trailing expression-comment lines used for display
        lines = []
        for line in block.splitlines():
            stripped = line.strip()
            if stripped and "#" in line and not stripped.startswith("#"):
                code, _, comment = line.partition("#")
                if code.strip() and not code.rstrip().endswith(("=", "(", ",")):
                    line = code.rstrip()
            lines.append(line)
        exec(compile("\n".join(lines), "<readme>", "exec"), ns)
    # spot-check the claims the snippets print as comments
    assert ns["rep"].ok and ns["b"].target.size == 343