#pragma once

#include <string>
#include <vector>

// Published values, copied digit for digit.

struct Table1Ref {
  int R;
  std::string lower, lower_per_R, c_new, c_new_per_R, upper;
};

inline const std::vector<Table1Ref>& table1_reference() {
  static const std::vector<Table1Ref> rows{
      {3, "1.24835051", "0.4161", "1.25992105", "0.4200", "1.25996299"},
      {4, "1.10094468", "0.2752", "1.10668192", "0.2767", "1.10669372"},
      {5, "0.98857246", "0.1977", "0.99186884", "0.1984", "0.99187320"},
      {6, "0.90458669", "0.1508", "0.90668114", "0.1511", "0.90668307"},
      {7, "0.84050266", "0.1201", "0.84193234", "0.1203", "0.84193331"},
      {8, "0.79032802", "0.0988", "0.79135723", "0.0989", "0.79135777"},
      {9, "0.75009489", "0.0833", "0.75086667", "0.0834", "0.75086699"},
      {10, "0.71715745", "0.0717", "0.71775513", "0.0718", "0.71775533"},
      {25, "0.52657849", "0.0211", "0.52664870", "0.0211", "0.52664871"},
      {50, "0.45565466", "0.0091", "0.45566985", "0.0091", "0.45566985"},
      {100, "0.41657808", "0.0042", "0.41658155", "0.0042", "0.41658155"},
      {125, "0.40816564", "0.0033", "0.40816781", "0.0033", "0.40816781"},
      {150, "0.40237807", "0.0027", "0.40237956", "0.0027", "0.40237956"},
  };
  return rows;
}

struct Table2Ref {
  int R;
  std::string c_new, known_A, ratio_B, ratio_tge2, ratio_tge2_per_R;
};

inline const std::vector<Table2Ref>& table2_reference() {
  static const std::vector<Table2Ref> rows{
      {4, "1.1067", "5.493", "4.9632", "12", "3.10"},
      {5, "0.9919", "5.929", "5.9772", "17", "3.46"},
      {6, "0.9067", "6.333", "6.9845", "23", "3.78"},
      {7, "0.8419", "6.726", "7.9888", "29", "4.07"},
      {8, "0.7914", "7.116", "8.9915", "35", "4.33"},
      {9, "0.7509", "7.504", "9.9934", "41", "4.57"},
      {10, "0.7178", "7.892", "10.9947", "48", "4.78"},
      {25, "0.5266", "13.692", "25.9992", "163", "6.51"},
      {50, "0.4557", "23.239", "50.9998", "376", "7.53"},
      {100, "0.4166", "42.075", "100.9999", "823", "8.23"},
      {125, "0.4082", "51.429", "126.0000", "1050", "8.40"},
      {150, "0.4024", "60.759", "151.0000", "1279", "8.52"},
  };
  return rows;
}
