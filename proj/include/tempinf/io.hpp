#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempinf/edge_list.hpp"
#include "tempinf/factorize.hpp"
#include "tempinf/influence.hpp"
#include "tempinf/similarity.hpp"
#include "tempinf/uniqueness.hpp"

namespace tempinf {

/// Shortest round-trip decimal form of a double; the one formatter behind
/// every numeric byte this project writes, so identical runs emit identical
/// artifacts.
std::string format_double(double value);

/// Whole-file read, transparently inflating gzip input (any path readable by
/// zlib's gz layer, compressed or not). Throws Io on failure.
std::string read_text_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

/// Influence matrix with its per-row metadata, as written to / read from the
/// matrix CSV ("node,t0,n_i,v1..vT") and the binary dump (little-endian:
/// magic "TINFMAT1", u64 rows, u64 cols, row-major f64 values).
struct MatrixBundle {
  Eigen::MatrixXd values;
  std::vector<NodeId> node_ids;
  std::vector<int> t0;
  std::vector<std::int64_t> n_i;
};

MatrixBundle bundle_of(const InfluenceMatrix& m);
MatrixBundle bundle_of(const AlignedInfluenceMatrix& m);

void write_matrix_csv(const std::string& path, const MatrixBundle& bundle,
                      const std::string& fingerprint);
MatrixBundle read_matrix_csv(const std::string& path);

void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& values);
MatrixBundle read_matrix_binary(const std::string& path);

/// Reads either layout, picked by a ".bin" extension.
MatrixBundle read_matrix_auto(const std::string& path);

/// Pattern CSV: "t,role_1[,role_2...]" with one row per snapshot.
void write_h_csv(const std::string& path, const FactorPair& pair,
                 const std::string& fingerprint);
/// Returns the k x T pattern matrix.
Eigen::MatrixXd read_h_csv(const std::string& path);

nlohmann::json factor_to_json(const FactorPair& pair);
nlohmann::json uniqueness_to_json(const UniquenessReport& report);

/// One row per network, the wide layout: l1 means per rho, then l2 means,
/// then cosine means.
void write_uniqueness_csv(const std::string& path, const std::string& network,
                          const UniquenessReport& report, const std::string& fingerprint);

void write_similarity_csv(const std::string& path, const SimilarityMatrix& matrix,
                          const std::string& fingerprint);

}  // namespace tempinf
