#include "ramsey/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "ramsey/frontend.hpp"
#include "ramsey/ops.hpp"
#include "ramsey/qe_exists.hpp"

namespace ramsey {

const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Sat: return "sat";
    case Verdict::Kind::Unsat: return "unsat";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

SolverConfig SolverConfig::from_env() {
  SolverConfig cfg;
  if (const char* p = std::getenv("RAMSEY_SOLVER"); p && *p) cfg.path = p;
  return cfg;
}

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] {
    struct sigaction sa {};
    sa.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &sa, nullptr);
  });
}

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

void make_pipe(Fd& r, Fd& w) {
  int p[2];
  if (::pipe2(p, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
  r.fd = p[0];
  w.fd = p[1];
}

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

}  // namespace

ProcessResult run_process(const std::string& path, const std::vector<std::string>& args, const std::string& input,
                          int timeout_ms) {
  if (timeout_ms <= 0) throw SolverError("timeout must be positive");
  ignore_sigpipe();
  Fd in_r, in_w, out_r, out_w, err_r, err_w, ex_r, ex_w;
  make_pipe(in_r, in_w);
  make_pipe(out_r, out_w);
  make_pipe(err_r, err_w);
  make_pipe(ex_r, ex_w);

  std::vector<std::string> argv_s{path};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_r.fd, 0);
    ::dup2(out_w.fd, 1);
    ::dup2(err_w.fd, 2);
    ::execvp(path.c_str(), argv.data());
    int e = errno;
    ssize_t ignored = ::write(ex_w.fd, &e, sizeof e);
    (void)ignored;
    ::_exit(127);
  }
  in_r.reset();
  out_w.reset();
  err_w.reset();
  ex_w.reset();

  int exec_errno = 0;
  if (::read(ex_r.fd, &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
    ::waitpid(pid, nullptr, 0);
    throw SolverError("cannot run solver '" + path + "': " + std::strerror(exec_errno));
  }

  set_nonblocking(in_w.fd);
  set_nonblocking(out_r.fd);
  set_nonblocking(err_r.fd);
  ProcessResult res;
  std::size_t written = 0;
  if (input.empty()) in_w.reset();
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  char buf[65536];
  while (out_r.fd >= 0 || err_r.fd >= 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      res.timed_out = true;
      break;
    }
    std::vector<pollfd> fds;
    if (in_w.fd >= 0) fds.push_back({in_w.fd, POLLOUT, 0});
    if (out_r.fd >= 0) fds.push_back({out_r.fd, POLLIN, 0});
    if (err_r.fd >= 0) fds.push_back({err_r.fd, POLLIN, 0});
    int n = ::poll(fds.data(), fds.size(), static_cast<int>(std::min<long>(left.count(), 1000)));
    if (n < 0 && errno != EINTR) throw SolverError(std::string("poll: ") + std::strerror(errno));
    for (const auto& p : fds) {
      if (!p.revents) continue;
      if (p.fd == in_w.fd) {
        ssize_t w = ::write(in_w.fd, input.data() + written, input.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN) in_w.reset();
        if (written == input.size()) in_w.reset();
        continue;
      }
      Fd& src = p.fd == out_r.fd ? out_r : err_r;
      std::string& dst = p.fd == out_r.fd ? res.out : res.err;
      ssize_t r = ::read(src.fd, buf, sizeof buf);
      if (r > 0)
        dst.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || errno != EAGAIN)
        src.reset();
    }
  }
  if (res.timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status))
    res.exit_code = WEXITSTATUS(status);
  else
    res.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  return res;
}

namespace {

std::string logic_for(const Formula& matrix, const std::vector<Var>& declared) {
  bool ints = false, reals = false;
  for (const auto& v : declared) (v.sort == Sort::Int ? ints : reals) = true;
  std::string l = infer_logic(matrix);
  if (l == "QF_LIRA" || (ints && reals)) return "QF_LIRA";
  if (reals && l == "QF_LIA") return "QF_LIRA";
  if (ints && l == "QF_LRA") return "QF_LIRA";
  if (!ints && !reals) return l;
  return reals ? "QF_LRA" : "QF_LIA";
}

Rational value_of(const SExpr& e) {
  switch (e.kind) {
    case SExpr::Kind::Numeral:
    case SExpr::Kind::Decimal:
      return Rational::parse(e.text);
    case SExpr::Kind::List:
      if (e.items.size() == 2 && e.items[0].is_symbol("-")) return -value_of(e.items[1]);
      if (e.items.size() == 3 && e.items[0].is_symbol("/")) {
        Rational d = value_of(e.items[2]);
        if (d.is_zero()) break;
        return value_of(e.items[1]) / d;
      }
      break;
    default:
      break;
  }
  throw SolverError("unexpected model value");
}

}  // namespace

Query render_query(const Formula& f, const SolverConfig& cfg, bool with_model) {
  if (contains_ramsey(f)) throw std::invalid_argument("ramsey binder not eliminated");
  FreshNames names(f);
  Prenex pre = hoist_exists(f, names);
  Query q;
  q.matrix = pre.matrix;
  q.declared = ordered_free_vars(f);
  q.declared.insert(q.declared.end(), pre.vars.begin(), pre.vars.end());
  Script s;
  s.declarations = q.declared;
  s.goal = pre.matrix;
  std::string body = print_smtlib2(s);
  std::string logic = cfg.logic.value_or(logic_for(pre.matrix, q.declared));
  body = body.substr(body.find('\n') + 1);
  q.text = "(set-option :produce-models true)\n(set-logic " + logic + ")\n" + body;
  if (with_model && !q.declared.empty()) {
    q.text += "(get-value (";
    for (std::size_t i = 0; i < q.declared.size(); ++i) {
      if (i) q.text += ' ';
      q.text += quote_symbol(q.declared[i].name);
    }
    q.text += "))\n";
  }
  q.text += "(exit)\n";
  return q;
}

Assignment parse_model(const std::string& text, const std::vector<Var>& declared) {
  std::map<std::string, Var> by_name;
  for (const auto& v : declared) by_name.emplace(v.name, v);
  Assignment a;
  std::vector<SExpr> es;
  try {
    es = read_sexprs(text);
  } catch (const ParseError& e) {
    throw SolverError(std::string("malformed solver output: ") + e.what());
  }
  for (const auto& e : es) {
    if (!e.is_list()) continue;
    for (const auto& pair : e.items) {
      if (!pair.is_list() || pair.items.size() != 2 || pair.items[0].kind != SExpr::Kind::Symbol) continue;
      auto it = by_name.find(pair.items[0].text);
      if (it == by_name.end()) continue;
      a[it->second] = value_of(pair.items[1]);
    }
  }
  return a;
}

Verdict check_sat(const Formula& f, const SolverConfig& cfg, bool with_model) {
  Query q = render_query(f, cfg, with_model);
  ProcessResult r = run_process(cfg.path, cfg.args, q.text, cfg.timeout_ms);
  if (r.timed_out) return Verdict::unknown("timeout");
  std::string out = r.out;
  auto start = out.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw SolverError("solver produced no output (exit " + std::to_string(r.exit_code) + "): " + r.err);
  auto end = out.find_first_of(" \t\r\n()", start);
  std::string head = out.substr(start, end == std::string::npos ? std::string::npos : end - start);
  if (out.find("(error") != std::string::npos) {
    // z3 reports get-value on unsat as an error; ignore that case.
    if (head != "unsat") throw SolverError("solver error: " + out);
  }
  if (head == "unsat") return Verdict::unsat();
  if (head == "unknown") return Verdict::unknown("solver returned unknown");
  if (head != "sat") throw SolverError("unexpected solver output: " + out.substr(0, 200));
  if (r.exit_code != 0) throw SolverError("solver exited with code " + std::to_string(r.exit_code));
  if (!with_model) return Verdict::sat();
  Assignment model = q.declared.empty() ? Assignment{} : parse_model(out.substr(end == std::string::npos ? out.size() : end), q.declared);
  for (const auto& v : q.declared) {
    if (!model.count(v)) throw SolverError("model lacks a value for '" + v.name + "'");
    if (v.sort == Sort::Int && !model[v].is_integer()) throw SolverError("non-integer value for '" + v.name + "'");
  }
  if (!evaluate(q.matrix, model)) throw SolverError("model fails re-verification");
  return Verdict::sat(std::move(model));
}

CliqueQuery clique_formula(const Formula& body, const std::vector<Var>& xs, const std::vector<Var>& ys,
                           const Assignment& params, int k) {
  if (k < 2 || k > 8) throw std::invalid_argument("clique size must lie in [2, 8]");
  if (xs.size() != ys.size()) throw std::invalid_argument("tuple length mismatch");
  FreshNames names(body);
  CliqueQuery q;
  for (int i = 0; i < k; ++i) {
    std::vector<Var> c;
    for (const auto& v : xs) c.push_back(names.fresh("c" + std::to_string(i), v.sort));
    q.copies.push_back(std::move(c));
  }
  std::vector<Formula> parts;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::map<Var, Term> m;
      for (const auto& [v, val] : params) m.emplace(v, Term::constant(val));
      for (std::size_t t = 0; t < xs.size(); ++t) {
        m.insert_or_assign(xs[t], Term::variable(q.copies[i][t]));
        m.insert_or_assign(ys[t], Term::variable(q.copies[j][t]));
      }
      parts.push_back(substitute(body, m, names));
      std::vector<LinTerm> a(q.copies[i].begin(), q.copies[i].end()), b(q.copies[j].begin(), q.copies[j].end());
      parts.push_back(vectors_differ(a, b));
    }
  }
  q.formula = mk_and(std::move(parts));
  return q;
}

Verdict find_k_clique(const Formula& body, const std::vector<Var>& xs, const std::vector<Var>& ys,
                      const Assignment& params, int k, const SolverConfig& cfg) {
  return check_sat(clique_formula(body, xs, ys, params, k).formula, cfg);
}

}  // namespace ramsey
