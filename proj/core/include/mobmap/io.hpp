#pragma once

#include <string>
#include <vector>

#include "mobmap/types.hpp"

namespace mobmap {

/// PCD v0.7 ASCII with FIELDS x y z and optional rgb (packed float).
/// Unknown fields are ignored on read; points with NaN coordinates are
/// dropped at load time.
PointCloud load_pcd(const std::string& path);
void save_pcd(const PointCloud& cloud, const std::string& path);

/// PLY ASCII with vertex properties x,y,z and optional red,green,blue.
/// Unknown properties and non-vertex elements are ignored on read; NaN
/// points are dropped.
PointCloud load_ply(const std::string& path);
void save_ply(const PointCloud& cloud, const std::string& path);

/// Dispatch on the file extension (.pcd / .ply).
PointCloud load_cloud(const std::string& path);
void save_cloud(const PointCloud& cloud, const std::string& path);

/// Per-point primitive labels ("index,label" CSV).
void save_labels_csv(const std::vector<int>& labels, const std::string& path);
std::vector<int> load_labels_csv(const std::string& path);

}  // namespace mobmap
