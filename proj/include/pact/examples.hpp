#pragma once

#include <string_view>

#include "pact/errors.hpp"
#include "pact/model.hpp"
#include "pact/parser.hpp"

namespace pact {

enum class ExampleName { agv, printer };

// The bundled case studies, embedded verbatim; the same text ships as
// model files next to the CLI.
inline std::string_view example_text(ExampleName name) {
  static constexpr std::string_view agv = R"PACT(# Automated production line: Workstation M makes preproducts on request,
# the guided vehicle A carries them to Workstation N and delivers finished
# products, a supervisor coordinates over the controllable channel s.

uncontrollable m, n, produce, process, move, deliver
controllable s
data make, move2N, preproduct, product

def M = (s?(make) . produce(preproduct) . m!(preproduct) . 1)*
def N = (n?(preproduct) . process(preproduct) . n!(product) . 1)*
def A = (m?(preproduct) . s?(move2N) . move(preproduct) . n!(preproduct) . 1
       + n?(product) . deliver(product) . 1)*

# Communication of (pre)products inside the plant is forced to complete.
plant U = encap({m?, m!, n?, n!}, M || N || A)

# S blindly alternates make and move2N orders; the closed loop deadlocks.
supervisor event S = (s!(make) . s!(move2N) . 1)*

# Sp waits for the finished product to be loaded before the next order;
# channel n then carries a three-way communication (N sends, A and the
# supervisor receive), so everything on n except n!1?2(product) and the
# plant-internal preproduct handoff is blocked.
supervisor event Sp = (s!(make) . s!(move2N) . n?(product) . 1)*

encap E  = { s?, s! }
encap Ep = { s?, s!, n?, n!?(product) }

rename xi:  s? -> s!?
rename xip: s? -> s!?, n!?(product) -> n!1?2
)PACT";
  static constexpr std::string_view printer = R"PACT(# Coordination of maintenance procedures in a printing process. Five
# procedures (page counter C, maintenance operation O, target power mode T,
# current power mode P, maintenance scheduling M) emit signals identifying
# their states; the status-procedure supervisor S reads those signals and
# enables controllable events through guards.

controllable Run2Stb, Stb2Run, SchedOper, OperStart
uncontrollable _OperFinished, _ToSoftDln, _ToHardDln, _ExecOperNow,
               _InRun, _InStb, _TargetRun, _TargetStandby

group S1 = { in(NoDeadline), in(SoftDeadline), in(HardDeadline) }
group S2 = { in(OperIdle), in(OperInProg) }
group S3 = { in(TargetStandby), in(TargetRun) }
group S4 = { in(Standby), in(Starting), in(Stopping), in(Run) }
group S5 = { in(NotScheduled), in(Scheduled), in(ExecuteNow) }

# Page counter: counts prints since the last maintenance and reports soft
# and hard deadlines; reset by the finished signal.
def C = (in(NoDeadline) ^^ (_OperFinished? . 1
       + _ToSoftDln . (in(SoftDeadline) ^^ (_OperFinished? . 1
       + _ToHardDln . (in(HardDeadline) ^^ _OperFinished? . 1)))))*

# Maintenance operation: idle until started, then broadcasts completion.
def O = (in(OperIdle) ^^ OperStart? . (in(OperInProg) ^^ _OperFinished! . 1))*

# Target power mode dictated by the managers.
def T = ((in(TargetStandby) ^^ _TargetRun . 1)
       ; (in(TargetRun) ^^ _TargetStandby . 1))*

# Current power mode: standby -> starting -> run -> stopping.
def P = ((in(Standby) ^^ Stb2Run? . (in(Starting) ^^ _InRun . 1))
       ; (in(Run) ^^ Run2Stb? . (in(Stopping) ^^ _InStb . 1)))*

# Maintenance scheduling: a scheduled operation is eventually released for
# immediate execution and reset by the finished signal.
def M = ((in(NotScheduled) ^^ SchedOper? . 1)
       ; (in(Scheduled) ^^ _ExecOperNow . 1)
       ; (in(ExecuteNow) ^^ _OperFinished? . 1))*

# Invariant process: exactly one signal per procedure group may hold, which
# makes the generic effect function harmless.
def I = ((oneof(S1) /\ oneof(S2) /\ oneof(S3) /\ oneof(S4) /\ oneof(S5)) ^^ 0)*

# _OperFinished is a three-way communication between O, C and M.
encap F = { _OperFinished?, _OperFinished!, _OperFinished!0?2, _OperFinished!? }

plant U = encap(F, C || O || T || P || M) || I

# Guarded supervisor; the guard indices follow the requirement indices.
supervisor state S = (
    [(in(SoftDeadline) /\ in(TargetStandby)) \/ in(HardDeadline)] -> SchedOper! . 1
  + [in(Standby) /\ in(ExecuteNow)] -> OperStart! . 1
  + [!in(ExecuteNow) /\ in(TargetRun) /\ !in(OperInProg)] -> Stb2Run! . 1
  + [(!in(ExecuteNow) /\ in(TargetStandby)) \/ in(ExecuteNow)] -> Run2Stb! . 1)*

encap E = { Run2Stb?, Run2Stb!, Stb2Run?, Stb2Run!,
            SchedOper?, SchedOper!, OperStart?, OperStart! }

rename xi: Run2Stb? -> Run2Stb!?, Stb2Run? -> Stb2Run!?,
           SchedOper? -> SchedOper!?, OperStart? -> OperStart!?

# In the closed loop the supervisor's sends show up as completed
# communications, so the requirements name the completed shapes.
req R1:  in(OperInProg) => in(Standby)
req R2:  enables(SchedOper!?) => (in(SoftDeadline) /\ !in(TargetRun)) \/ in(HardDeadline)
req R3:  enables(OperStart!?) => in(ExecuteNow)
req R41: enables(Stb2Run!?) => in(TargetRun) /\ !in(ExecuteNow)
req R42: enables(Run2Stb!?) => in(TargetStandby) \/ in(ExecuteNow)

# A completeness-rewritten power-mode target (every emission pins its whole
# group) demonstrates the alternative to the invariant process I; swap it in
# for T to explore that route.
# def Tc = ((in(TargetStandby) /\ !in(TargetRun) ^^ _TargetRun . 1)
#         ; (!in(TargetStandby) /\ in(TargetRun) ^^ _TargetStandby . 1))*

# An alternative supervisor that unfolds the control choices into explicit
# states produces the same supervised behavior with the same guards; its
# transition structure is not bundled here, supply one to compare:
# supervisor state S_alt = ...
)PACT";
  switch (name) {
    case ExampleName::agv:
      return agv;
    case ExampleName::printer:
      return printer;
  }
  throw Error("unknown example");
}

inline Model load_example(ExampleName name) {
  return parse_model(example_text(name));
}

}  // namespace pact
