#pragma once

// Bundled default rule base; identical to data/rules/default.json (a unit test
// keeps the two in sync).

#include <string_view>

namespace folio {

inline constexpr std::string_view kDefaultRulesJson = R"folio({
  "sizes": [
    {
      "width": 105,
      "height": 180,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 110,
      "height": 170,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 110,
      "height": 180,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 110,
      "height": 220,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 130,
      "height": 200,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 150,
      "height": 210,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 170,
      "height": 240,
      "orientation": "portrait",
      "weights": {
        "long_reading": 4,
        "short_reading": 3,
        "text_and_images": 1,
        "only_images": 0.5
      }
    },
    {
      "width": 180,
      "height": 180,
      "orientation": "square",
      "weights": {
        "long_reading": 1.75,
        "short_reading": 1.5,
        "text_and_images": 2,
        "only_images": 3
      }
    },
    {
      "width": 200,
      "height": 110,
      "orientation": "landscape",
      "weights": {
        "long_reading": 1.75,
        "short_reading": 1.5,
        "text_and_images": 1.5,
        "only_images": 2
      }
    },
    {
      "width": 200,
      "height": 120,
      "orientation": "landscape",
      "weights": {
        "long_reading": 1.75,
        "short_reading": 1.5,
        "text_and_images": 1.5,
        "only_images": 2
      }
    },
    {
      "width": 230,
      "height": 120,
      "orientation": "landscape",
      "weights": {
        "long_reading": 1.75,
        "short_reading": 1.5,
        "text_and_images": 1.5,
        "only_images": 2
      }
    }
  ],
  "margins": {
    "topBottom": {
      "min": 7,
      "max": 15
    },
    "insideOutside": {
      "min": 7,
      "max": 30
    }
  },
  "columns": {
    "width": {
      "min": 70,
      "max": 140
    },
    "gutter": {
      "min": 4,
      "max": 6
    }
  },
  "lineLength": {
    "min": 45,
    "ideal": 66,
    "max": 75,
    "justifiedMin": 48
  },
  "pageCapacity": {
    "oneColumn": 500,
    "multiColumn": 1000
  },
  "fontSize": {
    "min": 8,
    "max": 12,
    "step": 0.5,
    "titleScale": [
      2.4,
      1.4,
      1.0
    ],
    "titleLeading": 1.125,
    "captionScale": 0.85
  },
  "leading": {
    "min": 1.15,
    "max": 1.4,
    "base": 1.2
  },
  "wordSpacing": {
    "min": 0.8,
    "max": 1.2,
    "ideal": 1.0
  },
  "letterSpacing": {
    "min": -0.05,
    "max": 0.05,
    "ideal": 0
  },
  "alignments": {
    "raggedHyphenation": 0.5,
    "byBookType": {
      "long_reading": {
        "body": {
          "justified": 0.85,
          "left": 0.15
        },
        "title": {
          "left": 0.5,
          "centre": 0.5
        },
        "caption": {
          "left": 0.7,
          "right": 0.3
        }
      },
      "short_reading": {
        "body": {
          "justified": 0.5,
          "left": 0.5
        },
        "title": {
          "left": 0.5,
          "centre": 0.5
        },
        "caption": {
          "left": 0.7,
          "right": 0.3
        }
      },
      "text_and_images": {
        "body": {
          "justified": 0.5,
          "left": 0.5
        },
        "title": {
          "left": 0.5,
          "centre": 0.5
        },
        "caption": {
          "left": 0.7,
          "right": 0.3
        }
      },
      "only_images": {
        "body": {
          "justified": 0.5,
          "left": 0.5
        },
        "title": {
          "left": 0.5,
          "centre": 0.5
        },
        "caption": {
          "left": 0.7,
          "right": 0.3
        }
      }
    }
  },
  "paragraphMarks": [
    {
      "id": "ornament",
      "weight": 1
    },
    {
      "id": "space-before",
      "weight": 1
    },
    {
      "id": "pilcrow",
      "weight": 1
    },
    {
      "id": "negative-indent",
      "weight": 1
    },
    {
      "id": "positive-indent",
      "weight": 2
    }
  ],
  "headerLayouts": [
    {
      "id": "top-indented",
      "header": {
        "edge": "top",
        "align": "indented-left",
        "rotation": 0
      },
      "pageNumber": {
        "edge": "top",
        "align": "right"
      }
    },
    {
      "id": "bottom-centred",
      "header": {
        "edge": "bottom",
        "align": "centre",
        "rotation": 0
      },
      "pageNumber": {
        "edge": "bottom",
        "align": "outer"
      }
    },
    {
      "id": "top-centred",
      "header": {
        "edge": "top",
        "align": "centre",
        "rotation": 0
      },
      "pageNumber": {
        "edge": "top",
        "align": "outer"
      }
    },
    {
      "id": "top-centred-folio-bottom",
      "header": {
        "edge": "top",
        "align": "centre",
        "rotation": 0
      },
      "pageNumber": {
        "edge": "bottom",
        "align": "centre"
      }
    },
    {
      "id": "rotated-outer",
      "header": {
        "edge": "outer",
        "align": "centre",
        "rotation": 90
      },
      "pageNumber": {
        "edge": "outer",
        "align": "top-corner"
      }
    }
  ],
  "pairings": [
    {
      "id": "brrr-bold/ps-fournier-regular",
      "title": {
        "family": "BRRR",
        "weight": "bold",
        "classification": "sans",
        "source": "Swiss Typefaces, 2017"
      },
      "body": {
        "family": "PS Fournier",
        "weight": "regular",
        "classification": "serif",
        "source": "Typofonderie, 2012"
      },
      "leading": 1.17,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "founders-grotesk-bold/arnhem-regular",
      "title": {
        "family": "Founders Grotesk",
        "weight": "bold",
        "classification": "sans",
        "source": "Klim Type Foundry, 2010"
      },
      "body": {
        "family": "Arnhem",
        "weight": "regular",
        "classification": "serif",
        "source": "Fred Smeijers, 2002"
      },
      "leading": 1.25,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "founders-grotesk-bold/domain-regular",
      "title": {
        "family": "Founders Grotesk",
        "weight": "bold",
        "classification": "sans",
        "source": "Klim Type Foundry, 2010"
      },
      "body": {
        "family": "Domain",
        "weight": "regular",
        "classification": "serif",
        "source": "Klim Type Foundry, 2013"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "founders-grotesk-bold/founders-grotesk-regular",
      "title": {
        "family": "Founders Grotesk",
        "weight": "bold",
        "classification": "sans",
        "source": "Klim Type Foundry, 2010"
      },
      "body": {
        "family": "Founders Grotesk",
        "weight": "regular",
        "classification": "sans",
        "source": "Klim Type Foundry, 2010"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images"
      ]
    },
    {
      "id": "founders-grotesk-bold/tiempos-regular",
      "title": {
        "family": "Founders Grotesk",
        "weight": "bold",
        "classification": "sans",
        "source": "Klim Type Foundry, 2010"
      },
      "body": {
        "family": "Tiempos",
        "weight": "regular",
        "classification": "serif",
        "source": "Klim Type Foundry, 2010"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "futura-pt-bold/didot-regular",
      "title": {
        "family": "Futura PT",
        "weight": "bold",
        "classification": "sans",
        "source": "Paratype, 1995"
      },
      "body": {
        "family": "Didot",
        "weight": "regular",
        "classification": "serif",
        "source": "Linotype, 2009"
      },
      "leading": 1.3,
      "bookTypes": [
        "long_reading",
        "text_and_images"
      ]
    },
    {
      "id": "futura-pt-bold/sabon-regular",
      "title": {
        "family": "Futura PT",
        "weight": "bold",
        "classification": "sans",
        "source": "Paratype, 1995"
      },
      "body": {
        "family": "Sabon",
        "weight": "regular",
        "classification": "serif",
        "source": "Linotype, 1964"
      },
      "leading": 1.28,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "futura-pt-bold/futura-pt-regular",
      "title": {
        "family": "Futura PT",
        "weight": "bold",
        "classification": "sans",
        "source": "Paratype, 1995"
      },
      "body": {
        "family": "Futura PT",
        "weight": "regular",
        "classification": "sans",
        "source": "Paratype, 1995"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "gill-sans-bold/baskerville-pt-regular",
      "title": {
        "family": "Gill Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "Monotype, 1928"
      },
      "body": {
        "family": "Baskerville PT",
        "weight": "regular",
        "classification": "serif",
        "source": "ParaType, 2016"
      },
      "leading": 1.25,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "gill-sans-bold/perpetua-regular",
      "title": {
        "family": "Gill Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "Monotype, 1928"
      },
      "body": {
        "family": "Perpetua",
        "weight": "regular",
        "classification": "serif",
        "source": "Monotype, 1925"
      },
      "leading": 1.16,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "gill-sans-bold/minion-regular",
      "title": {
        "family": "Gill Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "Monotype, 1928"
      },
      "body": {
        "family": "Minion",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 1990"
      },
      "leading": 1.28,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "gill-sans-bold/times-new-roman-regular",
      "title": {
        "family": "Gill Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "Monotype, 1928"
      },
      "body": {
        "family": "Times New Roman",
        "weight": "regular",
        "classification": "serif",
        "source": "Monotype, 1931"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "gt-walsheim-pro-bold/adobe-caslon-regular",
      "title": {
        "family": "GT Walsheim Pro",
        "weight": "bold",
        "classification": "sans",
        "source": "Grilli Type, 2009"
      },
      "body": {
        "family": "Adobe Caslon",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 1990"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "gt-walsheim-pro-bold/bembo-regular",
      "title": {
        "family": "GT Walsheim Pro",
        "weight": "bold",
        "classification": "sans",
        "source": "Grilli Type, 2009"
      },
      "body": {
        "family": "Bembo",
        "weight": "regular",
        "classification": "serif",
        "source": "Monotype, 1929"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "helvetica-bold/arno-regular",
      "title": {
        "family": "Helvetica",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1957"
      },
      "body": {
        "family": "Arno",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 2007"
      },
      "leading": 1.16,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "helvetica-bold/joanna-regular",
      "title": {
        "family": "Helvetica",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1957"
      },
      "body": {
        "family": "Joanna",
        "weight": "regular",
        "classification": "serif",
        "source": "Monotype, 1931"
      },
      "leading": 1.22,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "helvetica-bold/helvetica-regular",
      "title": {
        "family": "Helvetica",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1957"
      },
      "body": {
        "family": "Helvetica",
        "weight": "regular",
        "classification": "sans",
        "source": "Linotype, 1957"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "la-nord-bold/lyon-text-regular",
      "title": {
        "family": "La Nord",
        "weight": "bold",
        "classification": "sans",
        "source": "Type Club Düsseldorf, 2017"
      },
      "body": {
        "family": "Lyon Text",
        "weight": "regular",
        "classification": "serif",
        "source": "Commercial Type, 2009"
      },
      "leading": 1.3,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "la-nord-bold/arno-regular",
      "title": {
        "family": "La Nord",
        "weight": "bold",
        "classification": "sans",
        "source": "Type Club Düsseldorf, 2017"
      },
      "body": {
        "family": "Arno",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 2007"
      },
      "leading": 1.16,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "la-nord-bold/la-nord-regular",
      "title": {
        "family": "La Nord",
        "weight": "bold",
        "classification": "sans",
        "source": "Type Club Düsseldorf, 2017"
      },
      "body": {
        "family": "La Nord",
        "weight": "regular",
        "classification": "sans",
        "source": "Type Club Düsseldorf, 2017"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "only_images"
      ]
    },
    {
      "id": "neuzeit-s-bold/antwerp-regular",
      "title": {
        "family": "Neuzeit S",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1959"
      },
      "body": {
        "family": "Antwerp",
        "weight": "regular",
        "classification": "serif",
        "source": "A2 Type, 2011"
      },
      "leading": 1.2,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "proxima-nova-bold/arnhem-regular",
      "title": {
        "family": "Proxima Nova",
        "weight": "bold",
        "classification": "sans",
        "source": "Mark Simonson Studio, 2005"
      },
      "body": {
        "family": "Arnhem",
        "weight": "regular",
        "classification": "serif",
        "source": "Fred Smeijers, 2002"
      },
      "leading": 1.25,
      "bookTypes": [
        "long_reading",
        "text_and_images"
      ]
    },
    {
      "id": "ff-scala-sans-bold/arno-regular",
      "title": {
        "family": "FF Scala Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "FontShop, 1990"
      },
      "body": {
        "family": "Arno",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 2007"
      },
      "leading": 1.16,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "ff-scala-sans-bold/ff-scala-serif-regular",
      "title": {
        "family": "FF Scala Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "FontShop, 1990"
      },
      "body": {
        "family": "FF Scala Serif",
        "weight": "regular",
        "classification": "serif",
        "source": "FontShop, 1990"
      },
      "leading": 1.28,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "univers-bold/sabon-regular",
      "title": {
        "family": "Univers",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1957"
      },
      "body": {
        "family": "Sabon",
        "weight": "regular",
        "classification": "serif",
        "source": "Monotype, 1967"
      },
      "leading": 1.28,
      "bookTypes": [
        "long_reading"
      ]
    },
    {
      "id": "akkurat-bold/akkurat-regular",
      "title": {
        "family": "Akkurat",
        "weight": "bold",
        "classification": "sans",
        "source": "Lineto, 2004"
      },
      "body": {
        "family": "Akkurat",
        "weight": "regular",
        "classification": "sans",
        "source": "Lineto, 2004"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "antique-olive-bold/antique-olive-regular",
      "title": {
        "family": "Antique Olive",
        "weight": "bold",
        "classification": "sans",
        "source": "Linotype, 1960"
      },
      "body": {
        "family": "Antique Olive",
        "weight": "regular",
        "classification": "sans",
        "source": "Linotype, 1960"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "only_images"
      ]
    },
    {
      "id": "arnhem-bold/arnhem-regular",
      "title": {
        "family": "Arnhem",
        "weight": "bold",
        "classification": "serif",
        "source": "Fred Smeijers, 2002"
      },
      "body": {
        "family": "Arnhem",
        "weight": "regular",
        "classification": "serif",
        "source": "Fred Smeijers, 2002"
      },
      "leading": 1.25,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "fedra-sans-bold/fedra-sans-regular",
      "title": {
        "family": "Fedra Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "Typotheque, 2001"
      },
      "body": {
        "family": "Fedra Sans",
        "weight": "regular",
        "classification": "sans",
        "source": "Typotheque, 2001"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "atf-franklin-gothic-bold/atf-franklin-gothic-regular",
      "title": {
        "family": "ATF Franklin Gothic",
        "weight": "bold",
        "classification": "sans",
        "source": "ATF, 2019"
      },
      "body": {
        "family": "ATF Franklin Gothic",
        "weight": "regular",
        "classification": "sans",
        "source": "ATF, 2019"
      },
      "leading": 1.2,
      "bookTypes": [
        "short_reading",
        "text_and_images",
        "only_images"
      ]
    },
    {
      "id": "scala-sans-bold/arno-regular",
      "title": {
        "family": "Scala Sans",
        "weight": "bold",
        "classification": "sans",
        "source": "FontShop, 1990"
      },
      "body": {
        "family": "Arno",
        "weight": "regular",
        "classification": "serif",
        "source": "Adobe, 2007"
      },
      "leading": 1.16,
      "bookTypes": [
        "short_reading",
        "only_images"
      ]
    }
  ],
  "coverColors": [
    {
      "name": "cyan",
      "cmyk": [
        100,
        0,
        0,
        0
      ]
    },
    {
      "name": "light orange",
      "cmyk": [
        0,
        40,
        100,
        0
      ]
    },
    {
      "name": "orange",
      "cmyk": [
        0,
        60,
        100,
        0
      ]
    },
    {
      "name": "red",
      "cmyk": [
        0,
        100,
        100,
        0
      ]
    },
    {
      "name": "pink",
      "cmyk": [
        0,
        39,
        3,
        0
      ]
    },
    {
      "name": "yellow",
      "cmyk": [
        0,
        0,
        100,
        0
      ]
    },
    {
      "name": "beige",
      "cmyk": [
        2,
        14,
        38,
        0
      ]
    }
  ],
  "featureProbability": 0.25,
  "classification": {
    "longReadingWords": 50000,
    "onlyImagesWordsPerImage": 50
  },
  "pagination": {
    "minLinesAtBreak": 2,
    "imageSpanProbability": 0.5,
    "captionAsideMinOuterMargin": 12,
    "imagePixelsPerInch": 72,
    "randomIndentMaxEm": 3
  }
}
)folio";

}  // namespace folio
