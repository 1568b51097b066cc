"""End-to-end checks of the landsketch command line.

usage: check_cli.py <landsketch binary> <dogwood fixture>
"""
import os
import subprocess
import sys
import tempfile

DOGWOOD = ("A realistic picture of a landscape design with trees, including a dogwood with pink "
           "flowers, flowering plants such as white tulips and daisies. The daisy is located below "
           "the dogwood, and the white tulip is positioned to the right of the daisy.")

failures = []


def run(args, expect, cwd):
    p = subprocess.run([BIN] + args, cwd=cwd, capture_output=True, text=True, timeout=120)
    if p.returncode != expect:
        failures.append(f"{args[:2]}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
    return p


def check(cond, what):
    if not cond:
        failures.append(what)


BIN, FIXTURE = os.path.abspath(sys.argv[1]), os.path.abspath(sys.argv[2])

with tempfile.TemporaryDirectory() as tmp:
    with open(os.path.join(tmp, "g.txt"), "w") as f:
        f.write("<daisy, bottom, dogwood>\n<tulip, right, daisy>\n")
    with open(os.path.join(tmp, "cyclic.txt"), "w") as f:
        f.write("<a, left, b>\n<b, left, a>\n")

    p = run(["oracle", "--graph-file", "g.txt"], 0, tmp)
    lines = p.stdout.splitlines()
    check(len(lines) == 3 and all(l.startswith("[") for l in lines), f"oracle output: {p.stdout!r}")
    check(p.stdout.endswith("\n"), "oracle output has no trailing newline")
    run(["oracle", "--graph-file", "cyclic.txt"], 2, tmp)
    run(["oracle"], 2, tmp)

    p = run(["benchmark", "--samples", "20", "--seed", "7"], 0, tmp)
    rows = [l.split() for l in p.stdout.splitlines() if l.startswith("oracle")]
    check(rows == [["oracle", "20", "20", "20", "20"]], f"benchmark output: {p.stdout!r}")

    run(["generate", "--description", DOGWOOD, "--fixture", FIXTURE, "--data-dir", "d",
         "--seed", "3", "--out", "a.png"], 0, tmp)
    png = os.path.join(tmp, "a.png")
    check(os.path.exists(png), "generate wrote no PNG")
    if os.path.exists(png):
        with open(png, "rb") as f:
            check(f.read(8) == b"\x89PNG\r\n\x1a\n", "generate output is not a PNG")
        p = run(["ssim", "a.png", "a.png"], 0, tmp)
        check(p.stdout.strip() == "1.000000", f"ssim identity: {p.stdout!r}")

    run(["generate", "--description", "a garden nobody recorded", "--fixture", FIXTURE,
         "--data-dir", "d"], 3, tmp)
    run(["generate", "--description", DOGWOOD, "--fixture", FIXTURE, "--data-dir", "d",
         "--season", "monsoon"], 2, tmp)

    p = run(["session", "list", "--data-dir", "d"], 0, tmp)
    ids = p.stdout.split()
    check(len(ids) >= 1, f"session list: {p.stdout!r}")
    for sid in ids:
        p = run(["session", "show", sid, "--data-dir", "d"], 0, tmp)
        if '"render_ref"' in p.stdout:
            p = run(["session", "replay", sid, "--data-dir", "d", "--fixture", FIXTURE], 0, tmp)
            check('"ok": true' in p.stdout, f"replay of {sid}: {p.stdout!r}")
    run(["session", "show", "0" * 32, "--data-dir", "d"], 2, tmp)

for f in failures:
    print("FAIL", f)
print("cli: %d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
