# Terms, search engine, constraint framework and the program frontend
