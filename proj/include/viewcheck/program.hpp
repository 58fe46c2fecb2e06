#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "viewcheck/action.hpp"
#include "viewcheck/value.hpp"

namespace viewcheck {

// ---------------------------------------------------------------------------
// Registers and local states

enum class RegKind : std::uint8_t {
  Rval,     // per-thread return-value register of the last method call
  Client,   // client local variable
  Library,  // local of a concrete method body
  Ghost,    // client register only written as a lock-acquire version
};

struct RegInfo {
  std::string name;
  RegKind kind = RegKind::Client;
};

/// Registers of one thread. Slot 0 is always rval.
class RegTable {
 public:
  RegTable();
  int slot(const std::string& name) const;  // -1 when absent
  int add(const std::string& name, RegKind kind);
  int ensure(const std::string& name, RegKind kind);
  const RegInfo& operator[](int slot) const { return regs_.at(slot); }
  RegInfo& at(int slot) { return regs_.at(slot); }
  std::size_t size() const { return regs_.size(); }

 private:
  std::vector<RegInfo> regs_;
};

inline constexpr int kRvalSlot = 0;

class LocalState {
 public:
  LocalState() = default;
  explicit LocalState(std::size_t n) : values_(n, Value::bot()) {}

  const Value& get(int slot) const;
  void set(int slot, Value v);
  std::size_t size() const { return values_.size(); }
  const std::vector<Value>& values() const { return values_; }

  bool operator==(const LocalState&) const = default;

 private:
  std::vector<Value> values_;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ExprOp : std::uint8_t { Lit, Reg, Not, Neg, Even, Odd, Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::Lit;
  Value lit;
  std::string name;  // register name (Reg)
  int slot = -1;     // resolved register slot (Reg)
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr literal(Value v);
  static ExprPtr reg(std::string name, int slot = -1);
  static ExprPtr unary(ExprOp op, ExprPtr e);
  static ExprPtr binary(ExprOp op, ExprPtr a, ExprPtr b);
};

/// ⟦e⟧ls. Throws Error for unresolved registers and ill-typed operands.
Value eval_expr(const Expr& e, const LocalState& ls);

// ---------------------------------------------------------------------------
// Commands

enum class Method : std::uint8_t { Acquire, Release, Enq, Deq };

const char* method_name(Method m);

/// An abstract method call o.m([u]). For lock acquires, `version_reg`
/// optionally names a register that receives the acquired version.
struct ObjCall {
  VarId obj = 0;
  std::string obj_name;
  Method method = Method::Acquire;
  ExprPtr arg;
  std::string version_reg;
  int version_slot = -1;
};

enum class CmdKind : std::uint8_t {
  Skip,     // ⊥
  Done,     // a hole that returned a value
  Assign,   // r := e   or   r := •
  Write,    // x :=[R] e
  Read,     // r <-[A] x
  Cas,      // r <- CAS(x, u, v)
  Fai,      // r <- FAI(x)
  Hole,     // •  (abstract call, pending call, or executing body)
  Seq,
  If,       // if e then c1 else c2   or   if • then ...
  While,
  DoUntil,  // do c1 until e (desugared before execution)
  Labelled, // pc label wrapper
};

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Cmd {
  CmdKind kind = CmdKind::Skip;
  Value value;              // Done
  std::string reg_name;     // Assign/Read/Cas/Fai target
  int reg = -1;
  VarId var = 0;            // Write/Read/Cas/Fai
  std::string var_name;
  bool sync = false;        // releasing write / acquiring read
  ExprPtr e1;               // Assign rhs, Write value, Cas expected, If/While/DoUntil condition
  ExprPtr e2;               // Cas new value; Hole return expression
  CmdPtr c1;                // Seq first, If then, While/DoUntil body, Labelled body, Hole body
  CmdPtr c2;                // Seq second, If else
  CmdPtr hole;              // Assign/If: the hole in value position
  ObjCall call;             // Hole
  bool pending = false;     // Hole: call issued, awaiting the object's result
  int label = 0;            // Labelled

  static CmdPtr skip();
  static CmdPtr done(Value v);
  static CmdPtr assign(std::string reg, ExprPtr e);
  static CmdPtr assign_call(std::string reg, CmdPtr hole);
  static CmdPtr write(std::string var, VarId x, ExprPtr e, bool release);
  static CmdPtr read(std::string reg, std::string var, VarId x, bool acquire);
  static CmdPtr cas(std::string reg, std::string var, VarId x, ExprPtr expected, ExprPtr desired);
  static CmdPtr fai(std::string reg, std::string var, VarId x);
  static CmdPtr call_hole(ObjCall call);
  static CmdPtr body_hole(ObjCall call, CmdPtr body, ExprPtr ret);
  static CmdPtr seq(CmdPtr a, CmdPtr b);
  static CmdPtr if_(ExprPtr cond, CmdPtr then_branch, CmdPtr else_branch);
  static CmdPtr if_call(CmdPtr hole, CmdPtr then_branch, CmdPtr else_branch);
  static CmdPtr while_(ExprPtr cond, CmdPtr body);
  static CmdPtr do_until(CmdPtr body, ExprPtr cond);
  static CmdPtr labelled(int label, CmdPtr body);
};

/// Builds a right-nested sequence; an empty list is skip.
CmdPtr sequence(const std::vector<CmdPtr>& cmds);

bool is_terminated(const Cmd& c);

/// Label of the next labelled statement the thread is at, if any.
std::optional<int> program_counter(const Cmd& c);

// ---------------------------------------------------------------------------
// Thread-local transitions

/// Label of a thread step: silent (no action) or an action, tagged with the
/// component whose code produced it. Object calls carry the requested call;
/// its action is fixed by the object semantics.
struct ThreadLabel {
  std::optional<Action> action;
  Component component = Component::Client;
  std::optional<ObjCall> call;

  bool silent() const { return !action && !call; }
};

struct LocalSucc {
  ThreadLabel label;
  CmdPtr next;
  LocalState ls;
};

/// Candidate values a read / CAS / FAI may return for a variable. The
/// memory semantics later discards values no observable write supplies.
using ValueOracle = std::function<std::vector<Value>(VarId)>;

/// All program-level successors of one thread.
std::vector<LocalSucc> local_step(const CmdPtr& c, const LocalState& ls, const ValueOracle& values);

/// Runs silent steps while the thread's only next step is silent. Throws
/// when a thread diverges silently.
std::pair<CmdPtr, LocalState> silent_closure(CmdPtr c, LocalState ls, std::size_t limit = 100000);

/// Result returned by an object for a pending call.
struct CallResult {
  Value value;
  int version = -1;
};

/// Replaces the pending hole with its result and records rval (and the
/// version register when requested).
std::pair<CmdPtr, LocalState> complete_call(const CmdPtr& c, const LocalState& ls, const CallResult& r);

/// What a hole is filled with.
struct HoleFill {
  enum class Kind { Value, Bot, Command } kind = Kind::Bot;
  Value value;
  CmdPtr body;
  ExprPtr ret;
};

/// C[D]: fills the leftmost innermost unfilled hole. Throws when C has none.
CmdPtr fill_hole(const CmdPtr& c, const HoleFill& d);

/// Fills every abstract hole using `body_for(call)`.
CmdPtr fill_all_holes(const CmdPtr& c, const std::function<HoleFill(const ObjCall&)>& body_for);

/// Replaces every do-until by `c; while !b do c`, innermost first.
CmdPtr desugar(const CmdPtr& c);

/// Resolves register names to slots, allocating them in `regs` with the
/// given kind when missing (version registers become Ghost unless already
/// known as something else).
CmdPtr resolve_registers(const CmdPtr& c, RegTable& regs, RegKind kind);

/// Every literal appearing in the command.
void collect_literals(const Cmd& c, std::vector<Value>& out);

/// Structural equality (ignores resolved slots).
bool same_expr(const ExprPtr& a, const ExprPtr& b);
bool same_cmd(const CmdPtr& a, const CmdPtr& b);

/// Compact encoding used for state hashing.
void serialize_cmd(const Cmd& c, std::string& out);

std::string print_expr(const Expr& e);
/// Pretty-prints a command. `note(label)` is inserted after each pc label
/// when non-empty (used for proof-outline annotations).
using LabelNote = std::function<std::string(int)>;
std::string print_cmd(const Cmd& c, int indent = 0, const LabelNote& note = {});

}  // namespace viewcheck
