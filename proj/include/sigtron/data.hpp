#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Dataset ingestion (CSV / libsvm-sparse), dimension-wise standardization,
// fold assignment, and class / scale-imbalance statistics.

namespace sigtron {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FileFormat { Csv, LibsvmSparse };

/// Dense feature matrix with labels.  Binary labels are stored as -1/+1;
/// multi-class labels as 0..K-1 in first-appearance order of the raw values.
class Dataset {
 public:
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> x;  // rows x cols, row-major
  std::vector<int> y;
  int n_classes = 0;
  std::vector<std::string> class_names;  // raw label per class id (multi-class)
  std::vector<double> feature_means;     // set by standardize
  std::vector<double> feature_stds;
  std::vector<int> fold_ids;  // empty until kfold_assign

  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * cols, cols};
  }
  bool binary() const { return n_classes == 2; }
};

Dataset load_dataset(const std::string& path, FileFormat format);
void save_dataset(const Dataset& ds, const std::string& path, FileFormat format);

struct StandardizeParams {
  std::vector<double> mean;
  std::vector<double> scale;  // 1 for zero-variance features
};

/// Fits mean/std (population variance) on `train`, transforms it in place,
/// and applies the same affine map to every dataset in `apply_to`.
StandardizeParams standardize(Dataset& train, std::span<Dataset*> apply_to);

struct ImbalanceStats {
  double r_c;
  double r_sc;
  std::vector<double> pos_centroid;
  std::vector<double> neg_centroid;
};

/// r_c = |N+|/|N-| and r_sc = r_c * sqrt((||x_p^c||^2+1)/(||x_n^c||^2+1)).
/// For multi-class datasets, positive_class selects the OVA view
/// (that class vs rest); for binary datasets pass +1 or -1.
ImbalanceStats imbalance_stats(const Dataset& ds, int positive_class);

/// Seeded uniform shuffle into k folds whose sizes differ by at most 1.
void kfold_assign(Dataset& ds, int k, std::uint64_t seed);

/// Binary +-1 view of a multi-class dataset: `positive_class` maps to +1.
Dataset make_ova_view(const Dataset& ds, int positive_class);

/// Row subsets by fold: held-out fold vs the rest.
Dataset fold_split(const Dataset& ds, int fold, bool held_out);

}  // namespace sigtron
