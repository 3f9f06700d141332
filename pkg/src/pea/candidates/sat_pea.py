"""Reference SAT program: DIMACS on stdin, assignment or UNSAT on stdout."""

import itertools
import sys


def parse_instance(text):
    num_vars, clauses, current = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "c%":
            if line.startswith("%"):
                break
            continue
        if line.startswith("p"):
            num_vars = int(line.split()[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    return num_vars, clauses


def evaluate_formula(formula, vals):
    _, clauses = formula
    return all(any(vals[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in clauses)


def enumerate_boolean(n):
    return itertools.product((False, True), repeat=n)


def can_evaluate(formula):
    for vals in enumerate_boolean(formula[0]):
        if evaluate_formula(formula, vals):
            return list(vals)
    return None


def main():
    assignment = can_evaluate(parse_instance(sys.stdin.read()))
    print("UNSAT" if assignment is None else "[" + ", ".join(map(str, assignment)) + "]")


if __name__ == "__main__":
    main()
