#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsa/dropout.hpp"
#include "hsa/mds.hpp"
#include "hsa/params.hpp"
#include "hsa/protocol.hpp"

namespace hsa {

/// Column layout of the stacked secret vector: all input symbols (W), then
/// all mask symbols (N), then all pad symbols (S). Every protocol symbol is
/// an exact homogeneous linear functional of this vector.
struct SecretLayout {
  int users = 0;
  int input_len = 0;
  int pad_len = 0;

  explicit SecretLayout(const SystemShape& s)
      : users(s.total_users()), input_len(s.input_len()),
        pad_len(s.colluders_max) {}

  int cols() const { return users * (2 * input_len + pad_len); }
  int input_col(int user, int i) const { return user * input_len + i; }
  int mask_col(int user, int i) const {
    return users * input_len + user * input_len + i;
  }
  int pad_col(int user, int i) const {
    return 2 * users * input_len + user * pad_len + i;
  }
  /// First column that is not an input symbol.
  int hidden_begin() const { return users * input_len; }
};

/// Adversary-view matrix plus per-row provenance labels.
struct LinearView {
  Matrix rows;
  std::vector<std::string> labels;
};

struct ViewOptions {
  bool mask_inputs = true;  // false: negative control with X1 = W
  // Stricter experimental mode: also hand the adversary the colluders' own
  // transmitted messages. Those are functions of the colluders' inputs and
  // keys, so leakage figures must not change; tests assert that.
  bool add_colluder_messages = false;
};

/// Round-2 share functional of `user` for the surviving set s1, over the
/// mask/pad columns.
std::vector<uint32_t> share_functional(const SecretLayout& lay,
                                       const MdsMatrix& alpha, int user,
                                       const std::vector<int>& s1);

/// What a single relay eventually observes: the round-1 message of every
/// cluster member (delayed availability) and the round-2 share of every
/// cluster member that transmitted one. `in_round1` marks whether the relay
/// survived round 1 (otherwise its users never received the surviving set
/// and sent no share).
Matrix relay_observed(const SystemParams& params, const MdsMatrix& alpha,
                      const SecretLayout& lay, const std::vector<int>& s1,
                      int relay, bool in_round1, const ViewOptions& opts = {});

/// Everything that determines the server's observed symbols. Selections are
/// present for relays that forwarded in round 2.
struct ServerViewKey {
  uint32_t round1_relays = 0;
  std::vector<uint32_t> round1_users;
  std::vector<std::optional<std::vector<int>>> selections;

  bool operator==(const ServerViewKey&) const = default;
};

/// Derives the server key from a pattern under the session policy (which
/// shares each relay forwards).
ServerViewKey server_key_for(const SystemParams& params,
                             const DropoutPattern& p,
                             const SessionPolicy& policy);

/// What the server eventually observes: every relay's round-1 aggregate
/// (delayed availability) and the forwarded shares of every round-1 relay.
Matrix server_observed(const SystemParams& params, const MdsMatrix& alpha,
                       const SecretLayout& lay, const ServerViewKey& key,
                       const ViewOptions& opts = {});

/// Identity rows selecting every input symbol (the secrets).
Matrix inputs_matrix(const SecretLayout& lay);

/// The desired-sum functionals over s1, one row per input coordinate.
Matrix sum_matrix(const SecretLayout& lay, const std::vector<int>& s1);

/// One user's key as rows: its mask vector plus one precoded share per
/// source user.
Matrix key_matrix(const SystemParams& params, const MdsMatrix& alpha,
                  const SecretLayout& lay, int user);

/// Colluding users' inputs and keys: for each member its input rows, then
/// its key rows.
Matrix colluder_matrix(const SystemParams& params, const MdsMatrix& alpha,
                       const SecretLayout& lay,
                       const std::vector<int>& colluders);

/// The colluders' own transmitted messages (round-1 uploads, and round-2
/// shares for members of s1), for ViewOptions::add_colluder_messages.
Matrix colluder_messages(const MdsMatrix& alpha,
                         const SecretLayout& lay, const std::vector<int>& s1,
                         const std::vector<int>& colluders,
                         const ViewOptions& opts = {});

}  // namespace hsa
