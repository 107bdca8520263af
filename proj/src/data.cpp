#include "sigtron/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace sigtron {

namespace {

bool parse_double(std::string_view tok, double& out) {
  // std::from_chars in libstdc++ 11 handles doubles; trim surrounding space.
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t'))
    tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' ||
                          tok.back() == '\r'))
    tok.remove_suffix(1);
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && p == end;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

struct RawRows {
  std::vector<std::vector<double>> features;
  std::vector<std::string> labels;
};

RawRows parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  RawRows raw;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto toks = split(line, ',');
    if (first_data_line) {
      // Header auto-detection: skip a first line whose first cell is non-numeric.
      double probe;
      if (!parse_double(toks.front(), probe)) {
        first_data_line = false;
        continue;
      }
      first_data_line = false;
    }
    if (toks.size() < 2)
      throw ParseError(path + ":" + std::to_string(lineno) + ": too few columns");
    if (width == 0) width = toks.size();
    if (toks.size() != width)
      throw ParseError(path + ":" + std::to_string(lineno) + ": ragged row");
    std::vector<double> row(width - 1);
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (!parse_double(toks[j], row[j]))
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": non-numeric cell '" + toks[j] + "'");
    }
    raw.features.push_back(std::move(row));
    std::string lab = toks.back();
    while (!lab.empty() && (lab.back() == ' ' || lab.back() == '\r'))
      lab.pop_back();
    while (!lab.empty() && lab.front() == ' ') lab.erase(lab.begin());
    raw.labels.push_back(lab);
  }
  if (raw.features.empty()) throw ParseError(path + ": empty dataset");
  return raw;
}

RawRows parse_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<std::string> labels;
  std::vector<std::vector<std::pair<std::size_t, double>>> sparse;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string lab, tok;
    if (!(is >> lab))
      throw ParseError(path + ":" + std::to_string(lineno) + ": missing label");
    std::vector<std::pair<std::size_t, double>> row;
    while (is >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected idx:val, got '" + tok + "'");
      double idxd, val;
      if (!parse_double(tok.substr(0, colon), idxd) || idxd < 1.0 ||
          idxd != std::floor(idxd))
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": bad feature index in '" + tok + "'");
      if (!parse_double(tok.substr(colon + 1), val))
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": bad feature value in '" + tok + "'");
      const auto idx = static_cast<std::size_t>(idxd);
      max_index = std::max(max_index, idx);
      row.emplace_back(idx - 1, val);
    }
    labels.push_back(lab);
    sparse.push_back(std::move(row));
  }
  if (labels.empty()) throw ParseError(path + ": empty dataset");
  RawRows raw;
  raw.labels = std::move(labels);
  raw.features.resize(sparse.size(), std::vector<double>(max_index, 0.0));
  for (std::size_t i = 0; i < sparse.size(); ++i)
    for (auto& [idx, val] : sparse[i]) raw.features[i][idx] = val;
  return raw;
}

Dataset build_dataset(RawRows raw, const std::string& path) {
  Dataset ds;
  ds.rows = raw.features.size();
  ds.cols = raw.features.front().size();
  ds.x.reserve(ds.rows * ds.cols);
  for (std::size_t i = 0; i < ds.rows; ++i) {
    if (raw.features[i].size() != ds.cols)
      throw ParseError(path + ": inconsistent feature dimension");
    for (double v : raw.features[i]) {
      if (!std::isfinite(v)) throw ParseError(path + ": non-finite feature value");
      ds.x.push_back(v);
    }
  }
  // Label dictionary in first-appearance order.
  std::vector<std::string> dict;
  std::vector<int> ids(ds.rows);
  for (std::size_t i = 0; i < ds.rows; ++i) {
    auto it = std::find(dict.begin(), dict.end(), raw.labels[i]);
    if (it == dict.end()) {
      dict.push_back(raw.labels[i]);
      it = std::prev(dict.end());
    }
    ids[i] = static_cast<int>(it - dict.begin());
  }
  ds.n_classes = static_cast<int>(dict.size());
  ds.class_names = dict;
  if (ds.n_classes < 2) throw ParseError(path + ": needs at least two classes");
  if (ds.n_classes == 2) {
    // Numeric -1/+1 labels keep their sign; otherwise first appearance -> +1.
    double v0, v1;
    int pos_id = 0;
    if (parse_double(dict[0], v0) && parse_double(dict[1], v1) &&
        ((v0 == 1.0 && v1 == -1.0) || (v0 == -1.0 && v1 == 1.0)))
      pos_id = (v0 == 1.0) ? 0 : 1;
    ds.y.resize(ds.rows);
    for (std::size_t i = 0; i < ds.rows; ++i)
      ds.y[i] = (ids[i] == pos_id) ? 1 : -1;
  } else {
    ds.y = std::move(ids);
  }
  return ds;
}

}  // namespace

Dataset load_dataset(const std::string& path, FileFormat format) {
  RawRows raw = (format == FileFormat::Csv) ? parse_csv(path) : parse_libsvm(path);
  return build_dataset(std::move(raw), path);
}

void save_dataset(const Dataset& ds, const std::string& path, FileFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  char buf[32];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < ds.rows; ++i) {
    if (format == FileFormat::Csv) {
      for (std::size_t j = 0; j < ds.cols; ++j) out << fmt(ds.x[i * ds.cols + j]) << ',';
      out << ds.y[i] << '\n';
    } else {
      out << ds.y[i];
      for (std::size_t j = 0; j < ds.cols; ++j) {
        const double v = ds.x[i * ds.cols + j];
        if (v != 0.0) out << ' ' << (j + 1) << ':' << fmt(v);
      }
      out << '\n';
    }
  }
}

StandardizeParams standardize(Dataset& train, std::span<Dataset*> apply_to) {
  const std::size_t s = train.cols;
  StandardizeParams params;
  params.mean.assign(s, 0.0);
  params.scale.assign(s, 1.0);
  for (std::size_t j = 0; j < s; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < train.rows; ++i) m += train.x[i * s + j];
    m /= static_cast<double>(train.rows);
    double var = 0.0;
    for (std::size_t i = 0; i < train.rows; ++i) {
      const double d = train.x[i * s + j] - m;
      var += d * d;
    }
    var /= static_cast<double>(train.rows);  // population convention
    params.mean[j] = m;
    if (var > 0.0) params.scale[j] = std::sqrt(var);
  }
  auto apply = [&](Dataset& ds) {
    if (ds.cols != s)
      throw ConfigError("standardize: feature dimension mismatch between splits");
    for (std::size_t i = 0; i < ds.rows; ++i)
      for (std::size_t j = 0; j < s; ++j)
        ds.x[i * s + j] = (ds.x[i * s + j] - params.mean[j]) / params.scale[j];
    ds.feature_means = params.mean;
    ds.feature_stds = params.scale;
  };
  apply(train);
  for (Dataset* ds : apply_to) apply(*ds);
  return params;
}

ImbalanceStats imbalance_stats(const Dataset& ds, int positive_class) {
  const std::size_t s = ds.cols;
  ImbalanceStats st;
  st.pos_centroid.assign(s, 0.0);
  st.neg_centroid.assign(s, 0.0);
  std::size_t np = 0, nn = 0;
  for (std::size_t i = 0; i < ds.rows; ++i) {
    const bool pos = ds.y[i] == positive_class;
    auto& cen = pos ? st.pos_centroid : st.neg_centroid;
    (pos ? np : nn) += 1;
    for (std::size_t j = 0; j < s; ++j) cen[j] += ds.x[i * s + j];
  }
  if (np == 0 || nn == 0)
    throw ConfigError("imbalance_stats: both classes must be nonempty");
  double pn = 0.0, nn2 = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    st.pos_centroid[j] /= static_cast<double>(np);
    st.neg_centroid[j] /= static_cast<double>(nn);
    pn += st.pos_centroid[j] * st.pos_centroid[j];
    nn2 += st.neg_centroid[j] * st.neg_centroid[j];
  }
  st.r_c = static_cast<double>(np) / static_cast<double>(nn);
  st.r_sc = st.r_c * std::sqrt((pn + 1.0) / (nn2 + 1.0));
  return st;
}

void kfold_assign(Dataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("kfold_assign: k must be >= 2");
  if (static_cast<std::size_t>(k) > ds.rows)
    throw ConfigError("kfold_assign: k exceeds number of rows");
  std::vector<std::size_t> perm(ds.rows);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  ds.fold_ids.assign(ds.rows, 0);
  for (std::size_t i = 0; i < ds.rows; ++i)
    ds.fold_ids[perm[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
}

Dataset make_ova_view(const Dataset& ds, int positive_class) {
  Dataset out = ds;
  if (ds.binary()) {
    if (positive_class != 1 && positive_class != -1)
      throw ConfigError("make_ova_view: binary datasets use +-1 classes");
    if (positive_class == -1)
      for (int& v : out.y) v = -v;
    out.n_classes = 2;
    return out;
  }
  bool found = false;
  for (std::size_t i = 0; i < ds.rows; ++i) {
    out.y[i] = (ds.y[i] == positive_class) ? 1 : -1;
    found |= ds.y[i] == positive_class;
  }
  if (!found) throw ConfigError("make_ova_view: class absent from dataset");
  out.n_classes = 2;
  out.class_names.clear();
  return out;
}

Dataset fold_split(const Dataset& ds, int fold, bool held_out) {
  if (ds.fold_ids.size() != ds.rows)
    throw ConfigError("fold_split: fold assignment missing");
  Dataset out;
  out.cols = ds.cols;
  out.n_classes = ds.n_classes;
  out.class_names = ds.class_names;
  for (std::size_t i = 0; i < ds.rows; ++i) {
    if ((ds.fold_ids[i] == fold) != held_out) continue;
    for (std::size_t j = 0; j < ds.cols; ++j) out.x.push_back(ds.x[i * ds.cols + j]);
    out.y.push_back(ds.y[i]);
    ++out.rows;
  }
  return out;
}

}  // namespace sigtron
