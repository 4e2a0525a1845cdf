#pragma once

// Published values, transcribed into canonical text ("a/b", "a+b*z3").

#include <string>
#include <vector>

namespace published {

struct Row {
  long n;
  const char* value;
};

struct GroupTable {
  const char* group;
  std::vector<Row> rows;
};

// Row 6 of the G1 table prints "-1 * 2^13 * 3 * _ * 5273 * 47339" with an empty
// factor slot; the product with the slot left out is stored.
inline const std::vector<GroupTable>& hauptmodul_tables() {
  static const std::vector<GroupTable> t{
      {"G1",
       {{-1, "1"},
        {0, "0"},
        {1, "14532"},
        {2, "616448"},
        {3, "-1445934"},
        {4, "-2257403904"},
        {5, "-166875439304"},
        {6, "-6134625411072"},
        {7, "346999549743"},
        {8, "14741046144663552"},
        {9, "997048522825618452"},
        {10, "32630729124035997696"},
        {11, "4563798797678877582"}}},
      {"G3",
       {{-1, "1"},
        {0, "0"},
        {1, "148932"},
        {2, "-71333864/2"},
        {3, "14784602112/2"},
        {4, "-2720037481056/2"},
        {5, "926140535244764/4"},
        {6, "-147594381291749376/4"},
        {7, "22341564325891713168/4"},
        {8, "-6482694981105850075968/8"},
        {9, "907550467150406926565376/8"},
        {10, "-123344662799290912907945472/8"},
        {11, "32655462531659638680360877638/16"}}},
      {"H1",
       {{-1, "1"},
        {0, "0"},
        {1, "1946"},
        {2, "17780"},
        {3, "813295"},
        {4, "-20472508"},
        {5, "-194969600"},
        {6, "-21590535732"},
        {7, "-86533770365"},
        {8, "-5540827925500"},
        {9, "121544077700080"},
        {10, "954435095756800"},
        {11, "97227702559110739"}}},
      {"H3",
       {{-1, "1"},
        {0, "0"},
        {1, "7583156"},
        {2, "-8915200000"},
        {3, "25855539541090"},
        {4, "-38753899878400000"},
        {5, "59853295754680171800"},
        {6, "-107814623754600729600000"},
        {7, "130691527974826975392903135"},
        {8, "-229196454200112641389772800000"},
        {9, "294346563065808045129145192319236"},
        {10, "-427644716636763893188085418688000000"},
        {11, "606586125578466006634487839969153168734"}}},
      {"U1",
       {{-1, "1+0*z3"},
        {0, "0+0*z3"},
        {1, "4+20*z3"},
        {2, "12+60*z3"},
        {3, "48-96*z3"},
        {4, "288+432*z3"},
        {5, "-1060/9-3893/9*z3"},
        {6, "-576+576*z3"},
        {7, "7372+13952/3*z3"},
        {8, "18312+7168*z3"},
        {9, "-33568-45200*z3"},
        {10, "93248-4160*z3"},
        {11, "-22548985/216-3412747/72*z3"}}},
      {"U6",
       {{-1, "1+0*z3"},
        {0, "0+0*z3"},
        {1, "4653180+3195612*z3"},
        {2, "7901431808+2113007616*z3"},
        {3, "-11584189398816-5777884753902*z3"},
        {4, "3027156411138048+3171254057975808*z3"},
        {5, "-3800819906733485320-20391915647836108224*z3"},
        {6, "-10803276590128984571904+15478255418070783762432*z3"},
        {7, "24908794926096718823786001+26591161128955478844327729*z3"},
        {8, "-12727797977727574691751002112-26181911558676353382430801920*z3"},
        {9, "-15929436789742692451659751424160+26604087748477982557834447865556*z3"}}},
  };
  return t;
}

// Weight-2 forms, a_n / u^n for n = 0..10.
inline const std::vector<GroupTable>& g2_tables() {
  static const std::vector<GroupTable> t{
      {"G1",
       {{0, "1"},
        {1, "-168"},
        {2, "-840"},
        {3, "733152"},
        {4, "-1615656"},
        {5, "1179184272"},
        {6, "-5780133408"},
        {7, "-1097701319232"},
        {8, "20620554819480"},
        {9, "-1310614136578824"},
        {10, "-14959868841286320"}}},
      {"G3",
       {{0, "1"},
        {1, "462"},
        {2, "-84420"},
        {3, "-807828"},
        {4, "-891458736"},
        {5, "82305718992"},
        {6, "5155138704870"},
        {7, "807981764899218"},
        {8, "-57396539567144736"},
        {9, "829520378016134700"},
        {10, "-368800915551641445600"}}},
      {"H1",
       {{0, "1"},
        {1, "-28"},
        {2, "-3108"},
        {3, "88172"},
        {4, "824012"},
        {5, "-14260008"},
        {6, "352362948"},
        {7, "13569079384"},
        {8, "-195382795860"},
        {9, "-1200557668744"},
        {10, "18866241755032"}}},
      {"H3",
       {{0, "1"},
        {1, "952"},
        {2, "-14260008"},
        {3, "5950907872"},
        {4, "18866241755032"},
        {5, "14858201843068752"},
        {6, "-29392973490650091168"},
        {7, "18769317912571342452672"},
        {8, "26663537479505346618394392"},
        {9, "12713310504973377181575454552"},
        {10, "-36194240778558471635244990599408"}}},
      {"U1",
       {{0, "1+0*z3"},
        {1, "10+8*z3"},
        {2, "28+56*z3"},
        {3, "-84+84*z3"},
        {4, "-336+0*z3"},
        {5, "-1008-1008*z3"},
        {6, "-184/3-710/3*z3"},
        {7, "9088/3-9566/3*z3"},
        {8, "30016/3+4256*z3"},
        {9, "19404+15624*z3"},
        {10, "-25984/3+139552/3*z3"}}},
      {"U6",
       {{0, "1+0*z3"},
        {1, "4944+1368*z3"},
        {2, "13265352+5264136*z3"},
        {3, "16044542112+12839470272*z3"},
        {4, "27018559576704+22545390152664*z3"},
        {5, "9649676839772016+9748947084182352*z3"},
        {6, "16480296599809346784+34718972026438197504*z3"},
        {7, "9122178274543742453376+9778372812649484494272*z3"},
        {8, "3599167618394097606994536+35207674866620513785843560*z3"},
        {9, "-1534671671263749769838754840+35212791025867821428233261296*z3"},
        {10, "-8424036363723923387197847067264+19858438209488318852697458205264*z3"}}},
  };
  return t;
}

// Weight-4 form for G1, a_n / u^n, as printed.
inline const std::vector<Row>& g4_table() {
  static const std::vector<Row> t{
      {1, "40.7303189636318364926"}, {2, "303.7319312003984"},     {3, "-1113445.924994532325"},
      {4, "-101378021.6026120116"},  {5, "-4677356098.49752275"},  {6, "110516113983.5601513"},
      {7, "10622672944963.34244"},   {8, "703827515349172.972"},   {9, "20587451911329502.7"},
      {10, "54985771355001805.6"},
  };
  return t;
}

struct HomRow {
  const char* family;
  const char* S;
  const char* R;
  const char* T;
  std::size_t image_order;
};

inline const std::vector<HomRow>& homomorphisms() {
  static const std::vector<HomRow> t{
      {"G", "(12)(34)(56)", "(235)(467)", "(1245)(367)", 5040},
      {"H", "(12)(34)(56)", "(235)(764)", "(12475)(36)", 5040},
      {"U", "(12)(34)(67)", "(235)(467)", "(124735)", 42},
      {"V", "(12)(34)(67)", "(253)(467)", "(125473)", 42},
  };
  return t;
}

// psi on the 28 groups: (12)(36)(45) on G_j and on H_j, and U_j <-> V_j.
inline const std::vector<std::pair<std::string, std::string>>& outer_table() {
  static const std::vector<std::pair<std::string, std::string>> t{
      {"G1", "G2"}, {"G2", "G1"}, {"G3", "G6"}, {"G6", "G3"}, {"G4", "G5"}, {"G5", "G4"}, {"G7", "G7"},
      {"H1", "H2"}, {"H2", "H1"}, {"H3", "H6"}, {"H6", "H3"}, {"H4", "H5"}, {"H5", "H4"}, {"H7", "H7"},
      {"U1", "V2"}, {"U2", "V1"}, {"U3", "V4"}, {"U4", "V3"}, {"U5", "V5"}, {"U6", "V6"}, {"U7", "V7"},
      {"V2", "U1"}, {"V1", "U2"}, {"V4", "U3"}, {"V3", "U4"}, {"V5", "U5"}, {"V6", "U6"}, {"V7", "U7"},
  };
  return t;
}

}  // namespace published
