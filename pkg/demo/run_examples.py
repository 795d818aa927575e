"""
Run every script under demo/scripts and show its output next to the exit code.

    python demo/run_examples.py [-v]
"""
import glob
import logging
import os
import sys

from biamalg.dsl.interpreter import ExecutionOptions, run_source

SCRIPTS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "scripts")
EXIT_NAMES = {0: "all checks passed", 1: "a check failed", 2: "input error"}


def main():
    logging.basicConfig(level=logging.INFO if "-v" in sys.argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for path in sorted(glob.glob(os.path.join(SCRIPTS_DIR, "*.bia"))):
        name = os.path.basename(path)
        print("=" * 72)
        print(name)
        print("-" * 72)
        with open(path, encoding="utf-8") as script_file:
            source = script_file.read()
        result = run_source(source, ExecutionOptions(base_dir=SCRIPTS_DIR, source_name=name))
        for line in result.lines:
            print(line)
        for message in result.diagnostics:
            print(f"!! {message}")
        print(f"exit code {result.exit_code} ({EXIT_NAMES[result.exit_code]})")

        for outcome in result.outcomes:
            if not outcome.passed and outcome.replay:
                print(f"\nreplay for {outcome.line}:")
                print(outcome.replay.rstrip())
                break
    print("=" * 72)


if __name__ == "__main__":
    main()
