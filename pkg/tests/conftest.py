import pytest

from netkat_safety.parser import parse_network_spec

TOPOLOGY = "pt=5 . pt<-6 + pt=6 . pt<-5 + pt=1 + pt=2 + pt=3 + pt=4"
P1 = "pt=1 . pt<-5 + pt=6 . pt<-2"
P2 = "pt=3 . pt<-5 + pt=6 . pt<-4"
P12 = f"{P1} + {P2}"


def two_switch_text(policy, ingress, egress):
    return (
        "# two switches, ports 1..6, internal link 5-6\n"
        "port_field: pt\n"
        "fields: pt in {1,2,3,4,5,6}\n"
        f"policy: {policy}\n"
        f"topology: {TOPOLOGY}\n"
        f"ingress: {ingress}\n"
        f"egress: {egress}\n"
    )


def two_switch(policy, ingress, egress):
    return parse_network_spec(two_switch_text(policy, ingress, egress))


@pytest.fixture
def spec_p1():
    return two_switch(P1, "pt=1", "pt=3 + pt=4")


@pytest.fixture
def spec_p12():
    return two_switch(P12, "pt=1", "pt=3 + pt=4")


# acceptance criteria report one line each at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
