#!/usr/bin/env python3
"""Regenerate the starter corpus under corpus/ from inline definitions."""
import json
import os

ROOT = os.path.join(os.path.dirname(__file__), "..", "corpus")

REGISTRY = [
    "Add Parameter",
    "Encapsulate Field",
    "Extract Function",
    "Extract Method",
    "Extract Variable",
    "Inline Method",
    "Inline Variable",
    "Move Method",
    "Pull Up Field",
    "Pull Up Method",
    "Push Down Field",
    "Push Down Method",
    "Remove Parameter",
    "Rename Class",
    "Rename Method",
    "Rename Variable",
]

FIG1_BEFORE = """\
public class A {
  public int k() {
    return 10;
  }
}
public class B extends A {
  public int k() {
    return 20;
  }
  public int m() {
    return super.k();
  }
}
public class C extends B {
  public static void main(String[] args) {
    C c = new C();
    System.out.println(c.m());
  }
}
"""

FIG1_AFTER = """\
public class A {
  public int k() {
    return 10;
  }
}
public class B extends A {
  public int k() {
    return 20;
  }
}
public class C extends B {
  public int m() {
    return super.k();
  }
  public static void main(String[] args) {
    C c = new C();
    System.out.println(c.m());
  }
}
"""

FIG2_BEFORE = """\
public abstract class Query {
  protected abstract SDQuery createQuery();
}
public class QueryV1 extends Query {
  public void doQuery() {
    SDQuery sd = createQuery();
    sd.run();
  }
  protected SDQuery createQuery() {
    return new SDQuery(1);
  }
}
public class QueryV2 extends Query {
  public void doQuery() {
    SDQuery sd = createQuery();
    sd.run();
  }
  protected SDQuery createQuery() {
    return new SDQuery(2);
  }
}
public class SDQuery {
  private final int version;
  public SDQuery(int version) {
    this.version = version;
  }
  public void run() {
    System.out.println(version);
  }
}
"""

FIG5_BEFORE = """\
class B:
    def a(self) -> None:
        text = 'hello'
"""

FIG5_AFTER = """\
class B:
    def a(self) -> None:
        continue = 'hello'
"""

FIG6_BEFORE = """\
public class A {
  private int f = 0;
}
public class B extends A {
  protected int f = 1;
  public long t() {
    return f;
  }
}
public class C extends A {}
"""

FIG9_BEFORE = """\
#include <stdio.h>

int main() {
  int a=0;
  printf("%d\\n", a);
  return 0;
}
"""

FIG9_AFTER = """\
#include <stdio.h>

const char newFunction() {
  return "%d\\n";
}
int main() {
  int a=0;
  printf(newFunction(), a);
  return 0;
}
"""

RENAME_BEFORE = """\
public class A {
  public String m(String s) {
    return s;
  }
}
public class B extends A {
  public String m(String s) {
    return s + s;
  }
  public String call() {
    return super.m("1");
  }
}
"""

RENAME_AFTER = """\
public class A {
  public String m(String s) {
    return s;
  }
}
public class B extends A {
  public String concat(String s) {
    return s + s;
  }
  public String call() {
    return A.this.m("1");
  }
}
"""

GREETER_BEFORE = """\
class Greeter:
    def greet(self, name):
        return 'hi ' + name

def run():
    g = Greeter()
    return g.greet('sam')
"""

GREETER_AFTER = """\
class Greeter:
    def welcome(self, name):
        return 'hi ' + name

def run():
    g = Greeter()
    return g.greet('sam')
"""

SHAPE_BEFORE = """\
public class Shape {
  public double area() {
    return 0.0;
  }
}
public class Circle extends Shape {
  public double radius() {
    return 2.0;
  }
}
public class Square extends Shape {}
"""

CASES = [
    {
        "id": "java-pushdown-method-behavior",
        "language": "java",
        "refactoring_kind": "Push Down Method",
        "bug_kind": "type1_behavior_change",
        "before": [{"path": "A.java", "text": FIG1_BEFORE}],
        "after": [{"path": "A.java", "text": FIG1_AFTER}],
        "expected_decision": "no",
        "ground_truth_reason": {
            "category": "behavior_change",
            "text": "Moving B.m down changes behavior: inside C, super.k() resolves to B.k, so main prints 20 instead of the original 10.",
        },
        "provenance": "Eclipse JDT Push Down Method applied to B.m; the transformed program compiles but changes the printed output.",
        "pinned_identifiers": ["main"],
    },
    {
        "id": "java-pullup-method-query",
        "language": "java",
        "refactoring_kind": "Pull Up Method",
        "bug_kind": "type2_blocked_valid",
        "before": [{"path": "Query.java", "text": FIG2_BEFORE}],
        "refactoring_params": "pull up method doQuery to class Query",
        "expected_decision": "yes",
        "ground_truth_reason": {
            "category": "not_applicable",
            "text": "Both subclasses define identical doQuery bodies; pulling the method up into Query is behavior-preserving and the block is an overly strict precondition.",
        },
        "provenance": "Pull Up Method wrongly blocked by Eclipse JDT (Eclipse bug 39896); later fixed in JDT 4.5.",
    },
    {
        "id": "python-rename-variable-keyword",
        "language": "python",
        "refactoring_kind": "Rename Variable",
        "bug_kind": "type1_compile_error",
        "before": [{"path": "b.py", "text": FIG5_BEFORE}],
        "after": [{"path": "b.py", "text": FIG5_AFTER}],
        "expected_decision": "no",
        "ground_truth_reason": {
            "category": "compile_error",
            "text": "Renaming text to continue produces a syntax error: continue is a reserved keyword and cannot be an assignment target.",
        },
        "provenance": "Rope rename accepts a reserved keyword as the new variable name.",
        "pinned_identifiers": ["self"],
    },
    {
        "id": "java-pushdown-field-shadow",
        "language": "java",
        "refactoring_kind": "Push Down Field",
        "bug_kind": "type2_blocked_valid",
        "before": [{"path": "A.java", "text": FIG6_BEFORE}],
        "refactoring_params": "push down A.f to class C",
        "expected_decision": "yes",
        "ground_truth_reason": {
            "category": "not_applicable",
            "text": "No code reads A.f: B.t reads B's own shadowing f, which stays 1, so moving the private field from A to C preserves behavior.",
        },
        "provenance": "JRRT rejects this Push Down Field via an overly strong precondition; Eclipse JDT applies it cleanly.",
    },
    {
        "id": "c-extract-function-return",
        "language": "c",
        "refactoring_kind": "Extract Function",
        "bug_kind": "type1_compile_error",
        "before": [{"path": "main.c", "text": FIG9_BEFORE}],
        "after": [{"path": "main.c", "text": FIG9_AFTER}],
        "expected_decision": "no",
        "ground_truth_reason": {
            "category": "compile_error",
            "text": "newFunction returns a string literal but is declared const char, so the refactored program fails to compile; the return type should be const char *.",
        },
        "provenance": "Eclipse CDT Extract Function emitted return type const char instead of const char * (Eclipse bug 396344).",
        "pinned_identifiers": ["main"],
    },
    {
        "id": "java-rename-method-supercall",
        "language": "java",
        "refactoring_kind": "Rename Method",
        "bug_kind": "type1_compile_error",
        "before": [{"path": "A.java", "text": RENAME_BEFORE}],
        "after": [{"path": "A.java", "text": RENAME_AFTER}],
        "expected_decision": "no",
        "ground_truth_reason": {
            "category": "compile_error",
            "text": "A.this is only valid inside an inner class of A; B is a subclass, so A.this.m does not compile. The call should have remained super.m.",
        },
        "provenance": "NetBeans Rename Method rewrote a super call into the illegal A.this form.",
    },
    {
        "id": "python-rename-method-missed-call",
        "language": "python",
        "refactoring_kind": "Rename Method",
        "bug_kind": "type1_runtime_error",
        "before": [{"path": "greeter.py", "text": GREETER_BEFORE}],
        "after": [{"path": "greeter.py", "text": GREETER_AFTER}],
        "expected_decision": "no",
        "ground_truth_reason": {
            "category": "runtime_error",
            "text": "The rename left g.greet pointing at a method that no longer exists; the module compiles but run raises AttributeError at runtime.",
        },
        "provenance": "Rope Rename Method missed a call site reached only at runtime.",
        "pinned_identifiers": ["self"],
    },
    {
        "id": "java-pushdown-method-valid",
        "language": "java",
        "refactoring_kind": "Push Down Method",
        "bug_kind": "type2_blocked_valid",
        "before": [{"path": "Shape.java", "text": SHAPE_BEFORE}],
        "refactoring_params": "push down method area from Shape to class Circle",
        "expected_decision": "yes",
        "ground_truth_reason": {
            "category": "not_applicable",
            "text": "No client calls Shape.area, so moving area from Shape down to Circle preserves behavior; the refusal is an overly strict precondition.",
        },
        "provenance": "Synthetic; modeled on Push Down Method rejections by JRRT's conservative precondition checker.",
    },
]


def main():
    cases_dir = os.path.join(ROOT, "cases")
    os.makedirs(cases_dir, exist_ok=True)
    with open(os.path.join(ROOT, "refactorings.txt"), "w") as fh:
        fh.write("# One refactoring kind per line; extend freely.\n")
        for kind in REGISTRY:
            fh.write(kind + "\n")
    for case in CASES:
        path = os.path.join(cases_dir, case["id"] + ".case.json")
        with open(path, "w") as fh:
            json.dump(case, fh, indent=2)
            fh.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
