#include <map>

#include "scalardyn_cli/config.hpp"

namespace scalardyn::cli {

namespace {

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p{
      {"fig1", R"ini(
[background]
family = linear_z
m0sq = 1
B = 1
switched = true

[initial]
form = instant
time = 0
q = 0, 0, 0
p = 0, 0, -0.5

[sweep]
key = initial.p
values = 0,0,-0.25; 0,0,-0.3333333333333333; 0,0,-0.4; 0,0,-0.5; 0,0,-0.6
labels = p3_0.25; p3_0.333; p3_0.4; p3_0.5; p3_0.6

[run]
t_end = 4
output_dt = 0.02
monitor = spacelike
drift_tol = 1e-8

[output]
prefix = fig1
)ini"},
      {"fig2", R"ini(
[background]
family = conformal
m0 = 1
L = 1
k = 1
switched = true

[initial]
form = extended
kappa = 0.5

[sweep]
key = initial.kappa
values = 0.3; 0.4; 0.5; 0.6; 0.7; 0.8; 0.9
labels = kappa_0.3; kappa_0.4; kappa_0.5; kappa_0.6; kappa_0.7; kappa_0.8; kappa_0.9

[run]
t_end = 20
stop = xminus >= 4
monitor = conformal
drift_tol = 1e-8

[output]
prefix = fig2
)ini"},
      {"planewave", R"ini(
[background]
family = planewave
profile = sin2: 1, 0.5

[initial]
form = extended
time = 0
q = 0.2, 0.1, 0.3, -0.2
p = 0.6, 0.4, -0.3

[run]
t_end = 10
output_dt = 0.05
monitor = planewave
drift_tol = 1e-8

[certify]
quantities = planewave
samples = 24
scale = 1

[kg]
solution = planewave
Q1 = 0.4
Q2 = -0.3
Qminus = 0.6
points = 50
h0 = 1e-2

[output]
prefix = planewave
)ini"},
      {"dilation", R"ini(
[background]
family = dilation
c2 = 2

[initial]
form = instant
time = 3
q = 0.2, -0.1, 0.3
p = 0.1, 0.2, -0.05

[run]
t_end = 6
output_dt = 0.05
monitor = dilation
drift_tol = 1e-8

[kg]
solution = dilation
Q1 = 0.7
Q2 = 0.3
Q3 = 0.8
c1 = 1
c2coef = 0.5
points = 50
h0 = 1e-2

[output]
prefix = dilation
)ini"},
      {"conformal", R"ini(
[background]
family = conformal
m0 = 1
L = 1
k = 1
switched = false

[initial]
form = extended
time = 0
q = 1.2, 0.1, 0.2, -0.1
p = 0.5, 0.1, 0.2

[run]
t_end = 2
output_dt = 0.02
monitor = conformal
drift_tol = 1e-8

[certify]
quantities = conformal
samples = 24
scale = 1

[kg]
solution = conformal
Q1 = 0.3
Q2 = -0.2
Q3 = 0.7
points = 50
h0 = 1e-2

[output]
prefix = conformal
)ini"},
      {"spacelike", R"ini(
[background]
family = linear_z
m0sq = 1
B = 1
switched = false

[initial]
form = instant
time = 0
q = 0.1, -0.2, 0.3
p = 0.2, -0.1, -0.4

[run]
t_end = 1
output_dt = 0.01
monitor = spacelike
drift_tol = 1e-8

[certify]
quantities = spacelike
samples = 24
scale = 0.8

[output]
prefix = spacelike
)ini"},
      {"free", R"ini(
[background]
family = constant
m0sq = 1

[initial]
form = instant
time = 0
q = 0, 0, 0
p = 0.3, -0.2, 0.5

[run]
t_end = 5
output_dt = 0.1
monitor = poincare
drift_tol = 1e-10

[certify]
quantities = p1, p2, p3
samples = 24

[kg]
solution = free
p = 0.3, -0.2, 0.5
points = 50
h0 = 1e-2

[output]
prefix = free
)ini"},
      {"offshell", R"ini(
[background]
family = constant
m0sq = 1

[kg]
solution = offshell
p = 0.3, -0.2, 0.5
points = 50
h0 = 1e-2

[output]
prefix = offshell
)ini"},
      {"truncated", R"ini(
[background]
family = linear_z
m0sq = 1
B = 1
switched = false

[initial]
form = instant

[certify]
quantities = p1, p2
samples = 24
scale = 0.8

[output]
prefix = truncated
)ini"},
  };
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : presets()) out.push_back(name);
  return out;
}

std::string preset_text(const std::string& name) {
  auto it = presets().find(name);
  if (it == presets().end()) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

}  // namespace scalardyn::cli
