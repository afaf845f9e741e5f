#pragma once

#include "peelkit/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace peelkit {

/// f_d(beta) = (4 sqrt(d) / (C_d^(1/d) beta) + 1)^d: a minimum distance of at
/// least beta |X|^(-1/d) makes X f_d(beta)-evenly distributed.
double f_d(int dim, double beta);

/// Inverse of f_d in beta, in closed form.
double beta_for_alpha(int dim, double alpha);

/// ceil(alpha * n * Vol(ball of radius r in R^d)). Values within a relative
/// 1e-12 of an integer are recomputed in 50-digit arithmetic before rounding.
std::uint64_t evenness_bound(double alpha, std::uint64_t n, int dim, double radius);

/// Number of points p with |p - center| <= radius, decided exactly.
std::size_t count_in_ball(const PointSet& points, PointView center, double radius);

enum class EvennessMethod { MinDistanceCertificate, BallProbe };
enum class EvennessVerdict { Certified, Refuted, Inconclusive };

/// A closed ball D with |X cap D| > ceil(alpha |X| Vol(D)).
struct EvennessWitness {
    std::vector<double> center;
    double radius = 0.0;
    std::size_t count = 0;
    std::uint64_t bound = 0;
};

struct EvennessReport {
    double alpha = 0.0;
    EvennessMethod method = EvennessMethod::MinDistanceCertificate;
    EvennessVerdict verdict = EvennessVerdict::Inconclusive;
    std::optional<EvennessWitness> witness;
    /// Certificate only: beta* = delta(X) |X|^(1/d) and f_d(beta*).
    std::optional<double> beta_star;
    std::optional<double> certified_level;
    /// Probe only: number of balls tested.
    std::size_t balls_tested = 0;
};

const char* to_string(EvennessMethod method);
const char* to_string(EvennessVerdict verdict);

/// Certified when f_d(delta(X) |X|^(1/d)) <= alpha, otherwise inconclusive.
EvennessReport certify_min_distance(const PointSet& points, double alpha);

struct ProbeOptions {
    std::uint64_t probes = 1000;
    std::uint64_t seed = 0;
    /// Largest neighbour rank used for the per-point balls (ranks 1, 2, 4, ...).
    std::size_t max_neighbor_rank = 64;
};

/// Searches for a ball that breaks the evenness inequality: random balls first,
/// then balls around each point reaching its 1st, 2nd, 4th, ... nearest
/// neighbour. Never certifies.
EvennessReport probe_evenness(const PointSet& points, double alpha, const ProbeOptions& options);

} // namespace peelkit
